#pragma once

/*
 * Canonical JSON for certificates: keys sorted, two-space indentation, big
 * integers as decimal strings, polynomials in canonical text form. The only
 * run-dependent field is "elapsed_ms".
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diaghyp/closure_certifier.hpp"

namespace diaghyp {

inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

std::string certificate_to_json_text(const ClosureCertificate& cert, std::optional<std::int64_t> elapsed_ms = {});

// Throws std::invalid_argument on malformed documents.
ClosureCertificate certificate_from_json_text(std::string_view text);

// Written through a temporary file and renamed into place.
// Throws std::runtime_error on I/O failure.
void write_certificate(const ClosureCertificate& cert, const std::filesystem::path& path,
                       std::optional<std::int64_t> elapsed_ms = {});
ClosureCertificate read_certificate(const std::filesystem::path& path);

std::string membership_record_to_json_text(const MembershipRecord& record);
std::string determinants_to_json_text(const std::vector<DeterminantRecord>& records);

// Same document with the timing field removed, re-serialized canonically.
std::string without_timing(std::string_view json_text);

void write_text_atomically(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace diaghyp
