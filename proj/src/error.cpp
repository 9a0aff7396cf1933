#include "epcaddr/error.hpp"

namespace epcaddr {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MalformedUri: return "MalformedUri";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::FieldOutOfRange: return "FieldOutOfRange";
    case ErrorCode::SerialTooWide: return "SerialTooWide";
    case ErrorCode::FieldOverflow: return "FieldOverflow";
    case ErrorCode::WrongHeader: return "WrongHeader";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::MalformedAddress: return "MalformedAddress";
    case ErrorCode::MultipleElision: return "MultipleElision";
    case ErrorCode::GroupOverflow: return "GroupOverflow";
    case ErrorCode::MissingSerial: return "MissingSerial";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::EpcTooWide: return "EpcTooWide";
    case ErrorCode::PayloadTooWide: return "PayloadTooWide";
    case ErrorCode::Unreadable: return "Unreadable";
    case ErrorCode::MalformedEntry: return "MalformedEntry";
    case ErrorCode::DuplicatePattern: return "DuplicatePattern";
    case ErrorCode::InvalidAddress: return "InvalidAddress";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

namespace {

std::string make_message(ErrorCode code, const std::string& detail)
{
    std::string msg(to_string(code));
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}

} // namespace

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(make_message(code, detail))
    , m_code(code)
    , m_detail(std::move(detail))
{
}

} // namespace epcaddr
