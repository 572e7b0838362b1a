#include "itsec/specdoc.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace itsec {

namespace {

using njson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::parse_error, msg); }

njson parse_document(const std::string& text) {
    try {
        return njson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
             std::string(e.what()));
    }
}

const njson& field(const njson& j, const char* name, const std::string& where) {
    if (!j.is_object()) fail(where + ": expected an object");
    if (!j.contains(name)) fail(where + ": missing field '" + name + "'");
    return j.at(name);
}

std::string string_field(const njson& j, const char* name, const std::string& where) {
    const njson& v = field(j, name, where);
    if (!v.is_string()) fail(where + ": field '" + std::string(name) + "' must be a string");
    return v.get<std::string>();
}

NumMode mode_field(const njson& j) {
    const std::string m = string_field(j, "numbers", "document");
    if (m == "rational") return NumMode::rational;
    if (m == "float") return NumMode::floating;
    fail("document: field 'numbers' must be \"rational\" or \"float\"");
}

std::vector<std::string> labels_field(const njson& a, const char* name,
                                      const std::string& where) {
    const njson& v = field(a, name, where);
    if (!v.is_array() || v.empty())
        fail(where + ": field '" + std::string(name) + "' must be a nonempty array");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_string()) fail(where + ": '" + std::string(name) + "' entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Num num_from_json(const njson& j, NumMode mode, const std::string& where) {
    if (mode == NumMode::rational) {
        if (!j.is_string()) fail(where + ": rational entries are \"num/den\" strings");
        try {
            return Num::rational(rat_parse(j.get<std::string>()));
        } catch (const Error& e) {
            fail(where + ": " + std::string(e.what()));
        }
    }
    if (!j.is_number()) fail(where + ": float entries are JSON numbers");
    return Num::floating(j.get<double>());
}

Dist dist_from_json(const njson& j, const std::vector<std::string>& labels, NumMode mode,
                    const std::string& where) {
    if (!j.is_array() || j.size() != labels.size())
        fail(where + ": expected " + std::to_string(labels.size()) + " probabilities");
    std::vector<Num> probs;
    probs.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        probs.push_back(num_from_json(j[i], mode, where + "[" + std::to_string(i) + "]"));
    try {
        return Dist::create(labels, std::move(probs));
    } catch (const Error& e) {
        fail(where + ": " + std::string(e.what()));
    }
}

njson num_to_json(const Num& v) {
    if (v.mode() == NumMode::rational) return rat_str(v.rat_value());
    return v.to_double();
}

njson dist_to_json(const Dist& d) {
    njson arr = njson::array();
    for (std::size_t i = 0; i < d.size(); ++i) arr.push_back(num_to_json(d.prob(i)));
    return arr;
}

std::string dump(const njson& j) { return j.dump(2) + "\n"; }

// ---- human-readable helpers ----

std::string num_text(const Num& v) {
    if (v.mode() == NumMode::rational) return rat_str(v.rat_value());
    std::ostringstream os;
    os << std::setprecision(12) << v.to_double();
    return os.str();
}

std::string mv_text(const MetricValue& m) {
    if (m.is_exact()) return num_text(m.lo);
    return "[" + num_text(m.lo) + ", " + num_text(m.hi) + "]";
}

std::string render_table(const std::vector<std::string>& head,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i + 1 == row.size()) {
                os << row[i];
            } else {
                os << row[i] << std::string(width[i] - row[i].size() + 2, ' ');
            }
        }
        os << '\n';
    };
    emit(head);
    for (const auto& row : rows) emit(row);
    return os.str();
}

std::vector<std::vector<std::string>> check_rows(const std::vector<RelationCheck>& checks) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(checks.size());
    for (const auto& c : checks)
        rows.push_back({c.name, status_name(c.status), num_text(c.lhs), num_text(c.rhs),
                        num_text(c.slack), c.note});
    return rows;
}

std::vector<std::vector<std::string>> bound_rows(const std::vector<BoundReport>& bounds) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(bounds.size());
    for (const auto& b : bounds)
        rows.push_back({b.name, bound_status_name(b.status), num_text(b.lhs_lo),
                        num_text(b.lhs_hi), num_text(b.rhs), b.note});
    return rows;
}

njson witness_to_json(const Witness& w) {
    njson o = njson::object();
    if (w.message) o["message"] = *w.message;
    if (w.message_pair)
        o["message_pair"] = njson::array({w.message_pair->first, w.message_pair->second});
    if (w.ciphertext) o["ciphertext"] = *w.ciphertext;
    if (w.input_dist) o["input_dist"] = *w.input_dist;
    if (w.center) o["center"] = *w.center;
    if (!w.note.empty()) o["note"] = w.note;
    return o;
}

njson mv_to_json(const MetricValue& m) {
    njson o;
    o["kind"] = m.is_exact() ? "exact" : "interval";
    o["lo"] = num_to_json(m.lo);
    o["hi"] = num_to_json(m.hi);
    njson w = witness_to_json(m.witness);
    if (!w.empty()) o["witness"] = std::move(w);
    if (!m.certification.empty()) o["certification"] = m.certification;
    return o;
}

njson checks_to_json(const std::vector<RelationCheck>& checks) {
    njson arr = njson::array();
    for (const auto& c : checks) {
        njson o;
        o["name"] = c.name;
        o["status"] = status_name(c.status);
        o["lhs"] = num_to_json(c.lhs);
        o["rhs"] = num_to_json(c.rhs);
        o["slack"] = num_to_json(c.slack);
        if (!c.note.empty()) o["note"] = c.note;
        arr.push_back(std::move(o));
    }
    return arr;
}

njson bounds_to_json(const std::vector<BoundReport>& bounds) {
    njson arr = njson::array();
    for (const auto& b : bounds) {
        njson o;
        o["name"] = b.name;
        o["status"] = bound_status_name(b.status);
        o["lhs_lo"] = num_to_json(b.lhs_lo);
        o["lhs_hi"] = num_to_json(b.lhs_hi);
        o["rhs"] = num_to_json(b.rhs);
        if (!b.note.empty()) o["note"] = b.note;
        arr.push_back(std::move(o));
    }
    return arr;
}

} // namespace

DocKind document_kind(const std::string& text) {
    const njson j = parse_document(text);
    const std::string t = string_field(j, "type", "document");
    if (t == "cipher") return DocKind::cipher;
    if (t == "keyagreement") return DocKind::keyagreement;
    fail("document: unknown type '" + t + "'");
}

CipherSpec cipher_from_document(const std::string& text) {
    const njson j = parse_document(text);
    if (string_field(j, "type", "document") != "cipher")
        fail("document: expected type \"cipher\"");
    CipherSpec s;
    s.mode = mode_field(j);
    s.name = j.contains("name") ? string_field(j, "name", "document") : "document";
    const njson& alpha = field(j, "alphabets", "document");
    s.messages = labels_field(alpha, "messages", "alphabets");
    s.keys = labels_field(alpha, "keys", "alphabets");
    s.ciphertexts = labels_field(alpha, "ciphertexts", "alphabets");
    s.decoded = alpha.contains("decoded") ? labels_field(alpha, "decoded", "alphabets")
                                          : s.messages;
    s.p_key = dist_from_json(field(j, "p_k", "document"), s.keys, s.mode, "p_k");

    const njson& enc = field(j, "enc", "document");
    if (!enc.is_array() || enc.size() != s.keys.size())
        fail("enc: expected one row per key");
    s.enc.resize(s.keys.size());
    for (std::size_t k = 0; k < s.keys.size(); ++k) {
        const njson& row = enc[k];
        const std::string where = "enc[" + std::to_string(k) + "]";
        if (!row.is_array() || row.size() != s.messages.size())
            fail(where + ": expected one entry per message");
        for (std::size_t m = 0; m < s.messages.size(); ++m)
            s.enc[k].push_back(dist_from_json(row[m], s.ciphertexts, s.mode,
                                              where + "[" + std::to_string(m) + "]"));
    }
    const njson& dec = field(j, "dec", "document");
    if (!dec.is_array() || dec.size() != s.keys.size())
        fail("dec: expected one row per key");
    s.dec.resize(s.keys.size());
    for (std::size_t k = 0; k < s.keys.size(); ++k) {
        const njson& row = dec[k];
        const std::string where = "dec[" + std::to_string(k) + "]";
        if (!row.is_array() || row.size() != s.ciphertexts.size())
            fail(where + ": expected one entry per ciphertext");
        for (std::size_t c = 0; c < s.ciphertexts.size(); ++c)
            s.dec[k].push_back(dist_from_json(row[c], s.decoded, s.mode,
                                              where + "[" + std::to_string(c) + "]"));
    }
    const ValidationReport rep = validate_spec(s);
    if (!rep.ok()) fail("document: " + rep.violations.front());
    return s;
}

KASpec ka_from_document(const std::string& text) {
    const njson j = parse_document(text);
    if (string_field(j, "type", "document") != "keyagreement")
        fail("document: expected type \"keyagreement\"");
    KASpec s;
    s.mode = mode_field(j);
    s.name = j.contains("name") ? string_field(j, "name", "document") : "document";
    const njson& alpha = field(j, "alphabets", "document");
    s.xs = labels_field(alpha, "xs", "alphabets");
    s.ys = labels_field(alpha, "ys", "alphabets");
    s.ts = labels_field(alpha, "ts", "alphabets");
    s.keys = labels_field(alpha, "keys", "alphabets");

    const njson& rounds = field(j, "rounds", "document");
    if (!rounds.is_number_unsigned()) fail("rounds: must be a nonnegative integer");
    s.rounds = rounds.get<std::size_t>();

    {
        const njson& pxy = field(j, "p_xy", "document");
        if (!pxy.is_array() || pxy.size() != s.xs.size())
            fail("p_xy: expected one row per x");
        std::vector<Num> probs;
        probs.reserve(s.xs.size() * s.ys.size());
        for (std::size_t x = 0; x < s.xs.size(); ++x) {
            const njson& row = pxy[x];
            const std::string where = "p_xy[" + std::to_string(x) + "]";
            if (!row.is_array() || row.size() != s.ys.size())
                fail(where + ": expected one entry per y");
            for (std::size_t y = 0; y < s.ys.size(); ++y)
                probs.push_back(num_from_json(row[y], s.mode,
                                              where + "[" + std::to_string(y) + "]"));
        }
        try {
            s.p_xy = Joint::create({{"X", s.xs}, {"Y", s.ys}}, std::move(probs));
        } catch (const Error& e) {
            fail("p_xy: " + std::string(e.what()));
        }
    }

    const njson& f = field(j, "f", "document");
    if (!f.is_array() || f.size() != s.rounds) fail("f: expected one table per round");
    s.f.resize(s.rounds);
    std::size_t prefixes = 1;
    for (std::size_t r = 0; r < s.rounds; ++r) {
        const std::size_t symbols = r % 2 == 0 ? s.xs.size() : s.ys.size();
        const njson& table = f[r];
        const std::string where = "f[" + std::to_string(r) + "]";
        if (!table.is_array() || table.size() != symbols)
            fail(where + ": expected one row per sender symbol");
        for (std::size_t sym = 0; sym < symbols; ++sym) {
            const njson& row = table[sym];
            const std::string rw = where + "[" + std::to_string(sym) + "]";
            if (!row.is_array() || row.size() != prefixes)
                fail(rw + ": expected one entry per transcript prefix");
            s.f[r].emplace_back();
            for (std::size_t p = 0; p < prefixes; ++p)
                s.f[r][sym].push_back(
                    dist_from_json(row[p], s.ts, s.mode, rw + "[" + std::to_string(p) + "]"));
        }
        prefixes *= s.ts.size();
    }

    auto load_outputs = [&](const char* name, std::size_t symbols) {
        const njson& g = field(j, name, "document");
        std::vector<std::vector<Dist>> out;
        if (!g.is_array() || g.size() != symbols)
            fail(std::string(name) + ": expected one row per symbol");
        out.resize(symbols);
        for (std::size_t sym = 0; sym < symbols; ++sym) {
            const njson& row = g[sym];
            const std::string rw = std::string(name) + "[" + std::to_string(sym) + "]";
            if (!row.is_array() || row.size() != prefixes)
                fail(rw + ": expected one entry per full transcript");
            for (std::size_t p = 0; p < prefixes; ++p)
                out[sym].push_back(
                    dist_from_json(row[p], s.keys, s.mode, rw + "[" + std::to_string(p) + "]"));
        }
        return out;
    };
    s.g_a = load_outputs("g_a", s.xs.size());
    s.g_b = load_outputs("g_b", s.ys.size());

    const ValidationReport rep = validate_ka(s);
    if (!rep.ok()) fail("document: " + rep.violations.front());
    return s;
}

std::string cipher_to_document(const CipherSpec& s) {
    njson j;
    j["type"] = "cipher";
    j["name"] = s.name;
    j["numbers"] = s.mode == NumMode::rational ? "rational" : "float";
    njson alpha;
    alpha["messages"] = s.messages;
    alpha["keys"] = s.keys;
    alpha["ciphertexts"] = s.ciphertexts;
    alpha["decoded"] = s.decoded;
    j["alphabets"] = std::move(alpha);
    j["p_k"] = dist_to_json(s.p_key);
    njson enc = njson::array();
    for (const auto& row : s.enc) {
        njson r = njson::array();
        for (const Dist& d : row) r.push_back(dist_to_json(d));
        enc.push_back(std::move(r));
    }
    j["enc"] = std::move(enc);
    njson dec = njson::array();
    for (const auto& row : s.dec) {
        njson r = njson::array();
        for (const Dist& d : row) r.push_back(dist_to_json(d));
        dec.push_back(std::move(r));
    }
    j["dec"] = std::move(dec);
    return dump(j);
}

std::string ka_to_document(const KASpec& s) {
    njson j;
    j["type"] = "keyagreement";
    j["name"] = s.name;
    j["numbers"] = s.mode == NumMode::rational ? "rational" : "float";
    njson alpha;
    alpha["xs"] = s.xs;
    alpha["ys"] = s.ys;
    alpha["ts"] = s.ts;
    alpha["keys"] = s.keys;
    j["alphabets"] = std::move(alpha);
    njson pxy = njson::array();
    for (std::size_t x = 0; x < s.xs.size(); ++x) {
        njson row = njson::array();
        for (std::size_t y = 0; y < s.ys.size(); ++y) row.push_back(num_to_json(s.p_xy.at(x, y)));
        pxy.push_back(std::move(row));
    }
    j["p_xy"] = std::move(pxy);
    j["rounds"] = s.rounds;
    njson f = njson::array();
    for (const auto& table : s.f) {
        njson t = njson::array();
        for (const auto& row : table) {
            njson r = njson::array();
            for (const Dist& d : row) r.push_back(dist_to_json(d));
            t.push_back(std::move(r));
        }
        f.push_back(std::move(t));
    }
    j["f"] = std::move(f);
    auto dump_outputs = [&](const std::vector<std::vector<Dist>>& g) {
        njson arr = njson::array();
        for (const auto& row : g) {
            njson r = njson::array();
            for (const Dist& d : row) r.push_back(dist_to_json(d));
            arr.push_back(std::move(r));
        }
        return arr;
    };
    j["g_a"] = dump_outputs(s.g_a);
    j["g_b"] = dump_outputs(s.g_b);
    return dump(j);
}

bool has_violation(const CipherAnalysis& a) {
    for (const auto& c : a.checks)
        if (c.status == CheckStatus::violated) return true;
    for (const auto& b : a.bounds)
        if (b.status == BoundStatus::violated) return true;
    return false;
}

bool has_violation(const KAAnalysis& a) {
    for (const auto& c : a.checks)
        if (c.status == CheckStatus::violated) return true;
    for (const auto& b : a.bounds)
        if (b.status == BoundStatus::violated) return true;
    return false;
}

std::string analysis_to_json(const CipherAnalysis& a) {
    njson j;
    njson sizes;
    sizes["messages"] = a.report.n_messages;
    sizes["keys"] = a.report.n_keys;
    sizes["ciphertexts"] = a.report.n_ciphertexts;
    njson rep;
    rep["sizes"] = std::move(sizes);
    rep["delta"] = mv_to_json(a.report.delta);
    njson eps;
    for (const auto& [idx, mv] : a.report.eps) eps[std::to_string(idx)] = mv_to_json(mv);
    rep["eps"] = std::move(eps);
    j["report"] = std::move(rep);
    j["checks"] = checks_to_json(a.checks);
    j["bounds"] = bounds_to_json(a.bounds);
    return dump(j);
}

std::string analysis_to_json(const KAAnalysis& a) {
    njson j;
    njson sizes;
    sizes["keys"] = a.report.n_keys;
    sizes["transcripts"] = a.report.n_transcripts;
    sizes["rounds"] = a.report.rounds;
    njson rep;
    rep["sizes"] = std::move(sizes);
    rep["h0_xy"] = a.report.h0_xy;
    rep["delta1"] = mv_to_json(a.report.delta1);
    rep["delta2"] = mv_to_json(a.report.delta2);
    rep["eps1"] = mv_to_json(a.report.eps1);
    rep["eps2"] = mv_to_json(a.report.eps2);
    rep["eps3"] = mv_to_json(a.report.eps3);
    rep["simulator"] = mv_to_json(a.report.simulator);
    rep["lower_bound"] = num_to_json(a.report.lower_bound);
    j["report"] = std::move(rep);
    j["checks"] = checks_to_json(a.checks);
    j["bounds"] = bounds_to_json(a.bounds);
    return dump(j);
}

std::string campaign_to_json(const CampaignReport& r) {
    njson j;
    j["kind"] = r.kind;
    j["trials"] = r.trials;
    j["seed"] = std::to_string(r.seed);
    j["defect_injected"] = r.defect_injected;
    j["checks_run"] = r.checks_run;
    j["violations"] = r.n_violations;
    j["trial_seed_rule"] = "SplitMix64(seed).derive(trial_index)";
    njson failures = njson::array();
    for (const auto& f : r.failures) {
        njson o;
        o["index"] = f.index;
        o["seed"] = std::to_string(f.seed);
        if (!f.violations.empty()) o["violations"] = f.violations;
        if (!f.error.empty()) o["error"] = f.error;
        failures.push_back(std::move(o));
    }
    j["failures"] = std::move(failures);
    return dump(j);
}

std::string analysis_to_text(const CipherAnalysis& a) {
    std::ostringstream os;
    os << "sizes  messages=" << a.report.n_messages << " keys=" << a.report.n_keys
       << " ciphertexts=" << a.report.n_ciphertexts << "\n\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"delta", mv_text(a.report.delta), a.report.delta.certification});
    for (const auto& [idx, mv] : a.report.eps)
        rows.push_back({"eps" + std::to_string(idx), mv_text(mv), mv.certification});
    os << render_table({"metric", "value", "certification"}, rows) << '\n';
    os << render_table({"check", "status", "lhs", "rhs", "slack", "note"},
                       check_rows(a.checks))
       << '\n';
    os << render_table({"bound", "status", "lhs_lo", "lhs_hi", "rhs", "note"},
                       bound_rows(a.bounds));
    return os.str();
}

std::string analysis_to_text(const KAAnalysis& a) {
    std::ostringstream os;
    os << "sizes  keys=" << a.report.n_keys << " transcripts=" << a.report.n_transcripts
       << " rounds=" << a.report.rounds << "\n";
    os << "resource-hartley  " << num_text(Num::floating(a.report.h0_xy)) << "\n";
    os << "protocol-floor    " << num_text(a.report.lower_bound) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"delta1", mv_text(a.report.delta1), a.report.delta1.certification});
    rows.push_back({"delta2", mv_text(a.report.delta2), a.report.delta2.certification});
    rows.push_back({"eps1", mv_text(a.report.eps1), a.report.eps1.certification});
    rows.push_back({"eps2", mv_text(a.report.eps2), a.report.eps2.certification});
    rows.push_back({"eps3", mv_text(a.report.eps3), a.report.eps3.certification});
    rows.push_back(
        {"simulator", mv_text(a.report.simulator), a.report.simulator.certification});
    os << render_table({"metric", "value", "certification"}, rows) << '\n';
    os << render_table({"check", "status", "lhs", "rhs", "slack", "note"},
                       check_rows(a.checks))
       << '\n';
    os << render_table({"bound", "status", "lhs_lo", "lhs_hi", "rhs", "note"},
                       bound_rows(a.bounds));
    return os.str();
}

std::string campaign_to_text(const CampaignReport& r) {
    std::ostringstream os;
    os << "campaign    " << r.kind << "\n";
    os << "trials      " << r.trials << "\n";
    os << "seed        " << r.seed << "\n";
    os << "defect      " << (r.defect_injected ? "injected" : "none") << "\n";
    os << "checks-run  " << r.checks_run << "\n";
    os << "violations  " << r.n_violations << "\n";
    os << "seed-rule   SplitMix64(seed).derive(trial_index)\n";
    if (!r.failures.empty()) {
        os << '\n';
        std::vector<std::vector<std::string>> rows;
        for (const auto& f : r.failures) {
            std::string detail = f.error;
            for (const auto& v : f.violations) {
                if (!detail.empty()) detail += " | ";
                detail += v;
            }
            rows.push_back({std::to_string(f.index), std::to_string(f.seed), detail});
        }
        os << render_table({"trial", "seed", "detail"}, rows);
    }
    return os.str();
}

} // namespace itsec
