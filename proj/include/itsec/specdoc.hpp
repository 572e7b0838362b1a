#pragma once

#include "itsec/fuzz.hpp"

namespace itsec {

/// Documents are UTF-8 JSON: {"type": "cipher"|"keyagreement", "name": ...,
/// "numbers": "rational"|"float", "alphabets": {...}, then "p_k"/"enc"/"dec"
/// or "p_xy"/"rounds"/"f"/"g_a"/"g_b" as nested arrays}. Rational entries are
/// "num/den" strings so exactness survives the round trip; float entries are
/// plain JSON numbers (shortest form that parses back to the same double).
/// Serialization is canonical: loading a document this module wrote and
/// writing it again reproduces the bytes.
enum class DocKind { cipher, keyagreement };

/// Peeks at the "type" field. Malformed input raises Errc::parse_error with
/// a line/column position; an unknown type names the offender.
DocKind document_kind(const std::string& text);

CipherSpec cipher_from_document(const std::string& text);
KASpec ka_from_document(const std::string& text);

std::string cipher_to_document(const CipherSpec& s);
std::string ka_to_document(const KASpec& s);

/// Everything the analyze verb reports for one scheme.
struct CipherAnalysis {
    SecurityReport report;
    std::vector<RelationCheck> checks;
    std::vector<BoundReport> bounds;
};

/// Everything the ka-analyze verb reports for one protocol.
struct KAAnalysis {
    KAReport report;
    std::vector<RelationCheck> checks;
    std::vector<BoundReport> bounds;
};

bool has_violation(const CipherAnalysis& a);
bool has_violation(const KAAnalysis& a);

/// Machine form: one JSON object, two-space indent, trailing newline,
/// identical bytes for identical inputs.
std::string analysis_to_json(const CipherAnalysis& a);
std::string analysis_to_json(const KAAnalysis& a);
std::string campaign_to_json(const CampaignReport& r);

/// Human form: aligned text tables. Wall-clock and worker-pool details are
/// deliberately excluded so output stays reproducible.
std::string analysis_to_text(const CipherAnalysis& a);
std::string analysis_to_text(const KAAnalysis& a);
std::string campaign_to_text(const CampaignReport& r);

} // namespace itsec
