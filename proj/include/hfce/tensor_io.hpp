// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hfce
{

// HFCT v1 layout, all little-endian:
//   "HFCT" | u16 version = 1 | u8 dtype = 1 | u8 ndim | u32 dims[ndim] | payload
// dtype 1 is complex64 as interleaved (real, imag) float32 pairs, row-major.
inline constexpr char kHfctMagic[4] = {'H', 'F', 'C', 'T'};
inline constexpr std::uint16_t kHfctVersion = 1;
inline constexpr std::uint8_t kHfctComplex64 = 1;

struct ComplexTensor
{
    std::vector<std::uint32_t> dims;
    std::vector<std::complex<float>> data; // row-major

    std::uint64_t element_count() const;
};

std::size_t hfct_header_size(std::size_t ndim);

void write_tensor(std::ostream& out, const ComplexTensor& tensor);
ComplexTensor read_tensor(std::istream& in);

void write_tensor(const std::filesystem::path& path, const ComplexTensor& tensor);
ComplexTensor read_tensor(const std::filesystem::path& path);

// 2-D helpers; the matrix is rounded to complex64.
ComplexTensor to_tensor(const Eigen::MatrixXcd& matrix);
Eigen::MatrixXcd to_matrix(const ComplexTensor& tensor);

} // namespace hfce
