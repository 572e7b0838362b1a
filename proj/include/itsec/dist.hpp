#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "itsec/num.hpp"

namespace itsec {

/// Finite probability distribution over a labeled alphabet.
/// Invariants: entries nonnegative, sum exactly 1 (rational mode) or within
/// tol of 1 (float mode); all entries share the distribution's mode.
class Dist {
public:
    static Dist create(std::vector<std::string> labels, std::vector<Num> probs,
                       double tol = kDefaultTol);
    static Dist uniform(std::vector<std::string> labels, NumMode mode);
    static Dist point_mass(std::vector<std::string> labels, std::size_t index, NumMode mode);

    NumMode mode() const { return mode_; }
    std::size_t size() const { return probs_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const Num& prob(std::size_t i) const { return probs_[i]; }
    const std::vector<Num>& probs() const { return probs_; }

    std::optional<std::size_t> index_of(const std::string& label) const;
    bool full_support() const;
    std::size_t support_size() const;
    Num max_prob() const;
    std::vector<double> to_doubles() const;

    bool same_alphabet(const Dist& o) const { return labels_ == o.labels_; }

private:
    Dist() : mode_(NumMode::rational) {}
    NumMode mode_;
    std::vector<std::string> labels_;
    std::vector<Num> probs_;
};

struct Axis {
    std::string name;
    std::vector<std::string> labels;
};

/// Dense joint distribution over 2 or 3 labeled axes (row-major).
class Joint {
public:
    static Joint create(std::vector<Axis> axes, std::vector<Num> probs,
                        double tol = kDefaultTol);
    /// Product of independent marginals.
    static Joint product(const Dist& a, const Dist& b, std::string name_a = "X",
                         std::string name_b = "Y");

    NumMode mode() const { return mode_; }
    std::size_t rank() const { return axes_.size(); }
    const Axis& axis(std::size_t i) const { return axes_[i]; }
    std::size_t dim(std::size_t i) const { return axes_[i].labels.size(); }
    std::size_t cells() const { return probs_.size(); }
    const std::vector<Num>& probs() const { return probs_; }

    const Num& at(std::size_t i, std::size_t j) const;
    const Num& at(std::size_t i, std::size_t j, std::size_t k) const;

    Dist marginal(std::size_t axis_index) const;
    /// Pairwise marginal of a rank-3 joint (axis order preserved as given).
    Joint marginal_pair(std::size_t a, std::size_t b) const;

    /// Conditional distribution over `target_axis` given fixed indices of the
    /// other axes (rank-2 only). Throws if the conditioning event has zero mass.
    Dist conditional(std::size_t target_axis, std::size_t given_index) const;

    std::size_t support_size() const;
    bool same_shape(const Joint& o) const;

private:
    Joint() : mode_(NumMode::rational) {}
    std::size_t offset(std::size_t i, std::size_t j) const { return i * dim(1) + j; }
    std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * dim(1) + j) * dim(2) + k;
    }
    NumMode mode_;
    std::vector<Axis> axes_;
    std::vector<Num> probs_;
};

/// Conditional-distribution family ("channel"): one output distribution per
/// input symbol, all over a shared output alphabet.
class Channel {
public:
    static Channel create(std::vector<std::string> input_labels, std::vector<Dist> columns);

    NumMode mode() const { return columns_.front().mode(); }
    std::size_t inputs() const { return input_labels_.size(); }
    std::size_t outputs() const { return columns_.front().size(); }
    const std::vector<std::string>& input_labels() const { return input_labels_; }
    const std::vector<std::string>& output_labels() const { return columns_.front().labels(); }
    const Dist& column(std::size_t m) const { return columns_[m]; }

    /// Output distribution under input distribution p (exact in-mode).
    Dist push_forward(const Dist& p) const;
    /// Joint over (input, output) under input distribution p.
    Joint joint_with_input(const Dist& p, std::string in_name = "M",
                           std::string out_name = "C") const;

    bool all_columns_equal() const;
    std::vector<std::vector<double>> to_double_rows() const;

private:
    Channel() = default;
    std::vector<std::string> input_labels_;
    std::vector<Dist> columns_;
};

} // namespace itsec
