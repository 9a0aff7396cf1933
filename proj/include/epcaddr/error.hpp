#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epcaddr {

enum class ErrorCode {
    // tag URI / EPC codec
    MalformedUri,
    UnknownScheme,
    FieldOutOfRange,
    SerialTooWide,
    FieldOverflow,
    WrongHeader,
    InvalidPartition,
    MalformedNumber,
    // IPv6 text
    MalformedAddress,
    MultipleElision,
    GroupOverflow,
    // derivation
    MissingSerial,
    MissingValue,
    EpcTooWide,
    PayloadTooWide,
    // registry
    Unreadable,
    MalformedEntry,
    DuplicatePattern,
    InvalidAddress,
    NoMatch,
    // harness
    Unsatisfiable,
    InvalidSpec,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library is reported as an Error carrying a stable code.
/// what() is "<CodeName>" or "<CodeName>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail = {});

    ErrorCode code() const noexcept { return m_code; }
    const std::string& detail() const noexcept { return m_detail; }

private:
    ErrorCode m_code;
    std::string m_detail;
};

} // namespace epcaddr
