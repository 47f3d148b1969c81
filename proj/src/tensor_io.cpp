// SPDX-License-Identifier: Apache-2.0
#include "hfce/tensor_io.hpp"

#include "hfce/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace hfce
{

namespace
{

template <typename T>
void put_le(std::ostream& out, T value)
{
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i)
        bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xffu);
    out.write(bytes.data(), bytes.size());
}

class Reader
{
public:
    explicit Reader(std::istream& in) : in_(in) {}

    void read(char* dst, std::size_t n, const char* what)
    {
        in_.read(dst, static_cast<std::streamsize>(n));
        const auto got = static_cast<std::size_t>(in_.gcount());
        if (got != n)
            throw FormatError(std::string("truncated HFCT stream while reading ") + what,
                              offset_ + got);
        offset_ += n;
    }

    template <typename T>
    T get_le(const char* what)
    {
        std::array<unsigned char, sizeof(T)> bytes{};
        read(reinterpret_cast<char*>(bytes.data()), bytes.size(), what);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
        return static_cast<T>(v);
    }

    std::uint64_t offset() const { return offset_; }

private:
    std::istream& in_;
    std::uint64_t offset_ = 0;
};

std::uint32_t float_bits(float f) { return std::bit_cast<std::uint32_t>(f); }
float bits_float(std::uint32_t u) { return std::bit_cast<float>(u); }

} // namespace

std::uint64_t ComplexTensor::element_count() const
{
    std::uint64_t count = 1;
    for (auto d : dims)
        count *= d;
    return dims.empty() ? 0 : count;
}

std::size_t hfct_header_size(std::size_t ndim)
{
    return 4 + 2 + 1 + 1 + 4 * ndim;
}

void write_tensor(std::ostream& out, const ComplexTensor& tensor)
{
    if (tensor.dims.empty() || tensor.dims.size() > std::numeric_limits<std::uint8_t>::max())
        throw InvalidArgument("HFCT tensors need between 1 and 255 dimensions");
    for (auto d : tensor.dims)
        if (d < 1)
            throw InvalidArgument("HFCT dimensions must be at least 1");
    if (tensor.element_count() != tensor.data.size())
        throw InvalidArgument("tensor data size does not match its dimensions");

    out.write(kHfctMagic, 4);
    put_le<std::uint16_t>(out, kHfctVersion);
    put_le<std::uint8_t>(out, kHfctComplex64);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(tensor.dims.size()));
    for (auto d : tensor.dims)
        put_le<std::uint32_t>(out, d);

    std::vector<char> buffer(tensor.data.size() * 8);
    for (std::size_t i = 0; i < tensor.data.size(); ++i)
    {
        const std::uint32_t re = float_bits(tensor.data[i].real());
        const std::uint32_t im = float_bits(tensor.data[i].imag());
        for (int b = 0; b < 4; ++b)
        {
            buffer[8 * i + b] = static_cast<char>((re >> (8 * b)) & 0xffu);
            buffer[8 * i + 4 + b] = static_cast<char>((im >> (8 * b)) & 0xffu);
        }
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

ComplexTensor read_tensor(std::istream& in)
{
    Reader r(in);
    char magic[4];
    r.read(magic, 4, "magic");
    if (std::memcmp(magic, kHfctMagic, 4) != 0)
        throw FormatError("bad HFCT magic", 0);
    const auto version = r.get_le<std::uint16_t>("version");
    if (version != kHfctVersion)
        throw FormatError("unsupported HFCT version " + std::to_string(version), 4);
    const auto dtype = r.get_le<std::uint8_t>("dtype");
    if (dtype != kHfctComplex64)
        throw FormatError("unsupported HFCT dtype " + std::to_string(dtype), 6);
    const auto ndim = r.get_le<std::uint8_t>("ndim");
    if (ndim == 0)
        throw FormatError("HFCT tensor with zero dimensions", 7);

    ComplexTensor t;
    std::uint64_t count = 1;
    constexpr std::uint64_t kMaxElements = std::numeric_limits<std::uint64_t>::max() / 8;
    for (std::uint8_t i = 0; i < ndim; ++i)
    {
        const auto at = r.offset();
        const auto d = r.get_le<std::uint32_t>("dims");
        if (d == 0)
            throw FormatError("HFCT dimension of size zero", at);
        if (count > kMaxElements / d)
            throw FormatError("HFCT dimensions overflow the payload size", at);
        count *= d;
        t.dims.push_back(d);
    }

    // Chunked so a corrupt header cannot force a huge allocation up front.
    constexpr std::uint64_t kChunk = 1u << 16;
    std::vector<unsigned char> buffer;
    std::uint64_t done = 0;
    while (done < count)
    {
        const auto n = std::min(kChunk, count - done);
        buffer.resize(static_cast<std::size_t>(n * 8));
        r.read(reinterpret_cast<char*>(buffer.data()), buffer.size(), "payload");
        for (std::uint64_t i = 0; i < n; ++i)
        {
            std::uint32_t re = 0;
            std::uint32_t im = 0;
            for (int b = 0; b < 4; ++b)
            {
                re |= static_cast<std::uint32_t>(buffer[8 * i + b]) << (8 * b);
                im |= static_cast<std::uint32_t>(buffer[8 * i + 4 + b]) << (8 * b);
            }
            t.data.emplace_back(bits_float(re), bits_float(im));
        }
        done += n;
    }
    return t;
}

void write_tensor(const std::filesystem::path& path, const ComplexTensor& tensor)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    write_tensor(out, tensor);
    out.flush();
    if (!out)
        throw IoError("failed writing " + path.string());
}

ComplexTensor read_tensor(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    try
    {
        auto t = read_tensor(in);
        if (in.peek() != std::char_traits<char>::eof())
            throw FormatError("trailing bytes after HFCT payload",
                              hfct_header_size(t.dims.size()) + 8 * t.data.size());
        return t;
    }
    catch (const FormatError& e)
    {
        throw FormatError(path.string() + ": " + e.reason(), e.offset());
    }
}

ComplexTensor to_tensor(const Eigen::MatrixXcd& matrix)
{
    ComplexTensor t;
    t.dims = {static_cast<std::uint32_t>(matrix.rows()), static_cast<std::uint32_t>(matrix.cols())};
    t.data.reserve(static_cast<std::size_t>(matrix.size()));
    for (Eigen::Index r = 0; r < matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < matrix.cols(); ++c)
            t.data.emplace_back(static_cast<float>(matrix(r, c).real()),
                                static_cast<float>(matrix(r, c).imag()));
    return t;
}

Eigen::MatrixXcd to_matrix(const ComplexTensor& tensor)
{
    if (tensor.dims.size() != 2)
        throw InvalidArgument("expected a 2-D tensor, got " + std::to_string(tensor.dims.size()) + "-D");
    const Eigen::Index rows = tensor.dims[0];
    const Eigen::Index cols = tensor.dims[1];
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
        {
            const auto& v = tensor.data[static_cast<std::size_t>(r * cols + c)];
            m(r, c) = {v.real(), v.imag()};
        }
    return m;
}

} // namespace hfce
