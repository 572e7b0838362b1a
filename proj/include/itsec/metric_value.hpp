#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itsec/num.hpp"

namespace itsec {

/// Re-evaluable evidence attached to a metric: the argmax/argmin objects that
/// realize (or justify) the reported value.
struct Witness {
    std::optional<std::string> message;
    std::optional<std::pair<std::string, std::string>> message_pair;
    std::optional<std::string> ciphertext;
    std::optional<std::vector<double>> input_dist; // best prior over messages
    std::optional<std::vector<double>> center;     // best center over ciphertexts
    std::string note;
};

/// A computed quantity: either exact, or a certified interval [lo, hi] whose
/// lower end is achieved by the witness and whose upper end is justified by
/// the inequality or certificate named in `certification`.
struct MetricValue {
    enum class Kind { exact, interval };

    Kind kind = Kind::exact;
    Num lo = Num::floating(0.0);
    Num hi = Num::floating(0.0);
    Witness witness;
    std::string certification;

    static MetricValue exact(Num v, Witness w = {}, std::string cert = {}) {
        MetricValue m;
        m.kind = Kind::exact;
        m.lo = v;
        m.hi = std::move(v);
        m.witness = std::move(w);
        m.certification = std::move(cert);
        return m;
    }
    static MetricValue interval(Num lo, Num hi, Witness w = {}, std::string cert = {}) {
        if (hi.less_exact(lo)) throw Error(Errc::invalid_argument, "metric interval: lo > hi");
        MetricValue m;
        m.kind = Kind::interval;
        m.lo = std::move(lo);
        m.hi = std::move(hi);
        m.witness = std::move(w);
        m.certification = std::move(cert);
        return m;
    }

    bool is_exact() const { return kind == Kind::exact; }
    double lo_d() const { return lo.to_double(); }
    double hi_d() const { return hi.to_double(); }
    double width() const { return hi_d() - lo_d(); }
};

} // namespace itsec
