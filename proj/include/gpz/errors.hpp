#pragma once

#include <stdexcept>
#include <string>

namespace gpz {

// A caller broke a documented precondition (bad lengths, out-of-range
// positions, impossible configuration).
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// Compressed data failed validation: truncated input, malformed stage
// output, checksum mismatch. Decoding never produces a wrong answer, it
// throws one of these instead.
class CorruptError : public std::runtime_error {
public:
    explicit CorruptError(const std::string& msg) : std::runtime_error(msg) {}
};

// The container header is not a recognizable archive (magic/version).
class FormatError : public CorruptError {
public:
    explicit FormatError(const std::string& msg) : CorruptError(msg) {}
};

}  // namespace gpz
