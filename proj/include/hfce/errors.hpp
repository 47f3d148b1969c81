// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hfce
{

struct InvalidArgument : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Law-of-cosines discriminant went non-positive for an element position.
struct DegenerateGeometry : std::domain_error
{
    using std::domain_error::domain_error;
};

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Malformed HFCT stream. offset() is the byte position where decoding failed.
class FormatError : public std::runtime_error
{
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), reason_(what),
          offset_(offset)
    {
    }

    std::uint64_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
    std::uint64_t offset_;
};

} // namespace hfce
