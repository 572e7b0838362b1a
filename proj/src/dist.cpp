#include "itsec/dist.hpp"

#include <cmath>
#include <set>

namespace itsec {

Rat rat_parse(std::string_view text) {
    if (text.empty()) throw Error(Errc::parse_error, "empty rational literal");
    std::string s(text);
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            throw Error(Errc::parse_error, "bad rational literal: " + s);
    }
    try {
        Rat r(s);
        if (r.get_den() == 0) throw Error(Errc::parse_error, "zero denominator: " + s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw Error(Errc::parse_error, "bad rational literal: " + s);
    }
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw Error(Errc::invalid_argument, "non-finite double to rational");
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    r.canonicalize();
    return r;
}

namespace {

void check_probs(const std::vector<Num>& probs, NumMode mode, double tol, const char* what) {
    Num sum = Num::zero(mode);
    for (const Num& p : probs) {
        if (p.mode() != mode) throw Error(Errc::mode_mismatch, std::string(what) + ": mixed-mode entries");
        if (p.sgn() < 0) throw Error(Errc::invalid_argument, std::string(what) + ": negative probability");
        sum = sum + p;
    }
    if (!sum.eq(Num::one(mode), tol))
        throw Error(Errc::invalid_argument,
                    std::string(what) + ": probabilities sum to " + sum.str() + ", not 1");
}

void check_labels(const std::vector<std::string>& labels, const char* what) {
    if (labels.empty()) throw Error(Errc::invalid_argument, std::string(what) + ": empty alphabet");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw Error(Errc::invalid_argument, std::string(what) + ": duplicate labels");
}

} // namespace

Dist Dist::create(std::vector<std::string> labels, std::vector<Num> probs, double tol) {
    check_labels(labels, "Dist");
    if (labels.size() != probs.size())
        throw Error(Errc::invalid_argument, "Dist: labels/probs size mismatch");
    NumMode mode = probs.front().mode();
    check_probs(probs, mode, tol, "Dist");
    Dist d;
    d.mode_ = mode;
    d.labels_ = std::move(labels);
    d.probs_ = std::move(probs);
    return d;
}

Dist Dist::uniform(std::vector<std::string> labels, NumMode mode) {
    check_labels(labels, "Dist");
    const auto n = static_cast<long>(labels.size());
    std::vector<Num> probs;
    probs.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        probs.push_back(mode == NumMode::rational ? Num::rational(rat(1, n))
                                                  : Num::floating(1.0 / static_cast<double>(n)));
    }
    return create(std::move(labels), std::move(probs));
}

Dist Dist::point_mass(std::vector<std::string> labels, std::size_t index, NumMode mode) {
    check_labels(labels, "Dist");
    if (index >= labels.size()) throw Error(Errc::invalid_argument, "point_mass: index out of range");
    std::vector<Num> probs(labels.size(), Num::zero(mode));
    probs[index] = Num::one(mode);
    return create(std::move(labels), std::move(probs));
}

std::optional<std::size_t> Dist::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

bool Dist::full_support() const {
    for (const Num& p : probs_)
        if (p.is_zero_exact()) return false;
    return true;
}

std::size_t Dist::support_size() const {
    std::size_t n = 0;
    for (const Num& p : probs_)
        if (!p.is_zero_exact()) ++n;
    return n;
}

Num Dist::max_prob() const {
    Num best = probs_.front();
    for (const Num& p : probs_) best = max(best, p);
    return best;
}

std::vector<double> Dist::to_doubles() const {
    std::vector<double> out;
    out.reserve(probs_.size());
    for (const Num& p : probs_) out.push_back(p.to_double());
    return out;
}

Joint Joint::create(std::vector<Axis> axes, std::vector<Num> probs, double tol) {
    if (axes.size() != 2 && axes.size() != 3)
        throw Error(Errc::invalid_argument, "Joint: rank must be 2 or 3");
    std::size_t cells = 1;
    for (const Axis& a : axes) {
        check_labels(a.labels, "Joint axis");
        cells *= a.labels.size();
    }
    if (cells != probs.size()) throw Error(Errc::invalid_argument, "Joint: cell count mismatch");
    NumMode mode = probs.front().mode();
    check_probs(probs, mode, tol, "Joint");
    Joint j;
    j.mode_ = mode;
    j.axes_ = std::move(axes);
    j.probs_ = std::move(probs);
    return j;
}

Joint Joint::product(const Dist& a, const Dist& b, std::string name_a, std::string name_b) {
    std::vector<Num> probs;
    probs.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) probs.push_back(a.prob(i) * b.prob(j));
    return create({Axis{std::move(name_a), a.labels()}, Axis{std::move(name_b), b.labels()}},
                  std::move(probs), 1e-6);
}

const Num& Joint::at(std::size_t i, std::size_t j) const {
    if (rank() != 2) throw Error(Errc::invalid_argument, "Joint::at(i,j) on rank-3 joint");
    return probs_[offset(i, j)];
}

const Num& Joint::at(std::size_t i, std::size_t j, std::size_t k) const {
    if (rank() != 3) throw Error(Errc::invalid_argument, "Joint::at(i,j,k) on rank-2 joint");
    return probs_[offset(i, j, k)];
}

Dist Joint::marginal(std::size_t axis_index) const {
    if (axis_index >= rank()) throw Error(Errc::invalid_argument, "Joint::marginal axis out of range");
    std::vector<Num> sums(dim(axis_index), Num::zero(mode_));
    if (rank() == 2) {
        for (std::size_t i = 0; i < dim(0); ++i)
            for (std::size_t j = 0; j < dim(1); ++j)
                sums[axis_index == 0 ? i : j] = sums[axis_index == 0 ? i : j] + probs_[offset(i, j)];
    } else {
        for (std::size_t i = 0; i < dim(0); ++i)
            for (std::size_t j = 0; j < dim(1); ++j)
                for (std::size_t k = 0; k < dim(2); ++k) {
                    std::size_t idx = axis_index == 0 ? i : (axis_index == 1 ? j : k);
                    sums[idx] = sums[idx] + probs_[offset(i, j, k)];
                }
    }
    return Dist::create(axes_[axis_index].labels, std::move(sums), 1e-6);
}

Joint Joint::marginal_pair(std::size_t a, std::size_t b) const {
    if (rank() != 3) throw Error(Errc::invalid_argument, "marginal_pair needs a rank-3 joint");
    if (a >= 3 || b >= 3 || a == b) throw Error(Errc::invalid_argument, "marginal_pair: bad axes");
    std::vector<Num> sums(dim(a) * dim(b), Num::zero(mode_));
    for (std::size_t i = 0; i < dim(0); ++i)
        for (std::size_t j = 0; j < dim(1); ++j)
            for (std::size_t k = 0; k < dim(2); ++k) {
                std::size_t ia = a == 0 ? i : (a == 1 ? j : k);
                std::size_t ib = b == 0 ? i : (b == 1 ? j : k);
                sums[ia * dim(b) + ib] = sums[ia * dim(b) + ib] + probs_[offset(i, j, k)];
            }
    return Joint::create({axes_[a], axes_[b]}, std::move(sums), 1e-6);
}

Dist Joint::conditional(std::size_t target_axis, std::size_t given_index) const {
    if (rank() != 2) throw Error(Errc::invalid_argument, "conditional needs a rank-2 joint");
    if (target_axis >= 2) throw Error(Errc::invalid_argument, "conditional: bad axis");
    const std::size_t other = 1 - target_axis;
    if (given_index >= dim(other)) throw Error(Errc::invalid_argument, "conditional: index out of range");
    Num mass = Num::zero(mode_);
    for (std::size_t t = 0; t < dim(target_axis); ++t)
        mass = mass + (target_axis == 0 ? at(t, given_index) : at(given_index, t));
    if (mass.is_zero_exact())
        throw Error(Errc::invalid_argument, "conditional on zero-probability event");
    std::vector<Num> probs;
    probs.reserve(dim(target_axis));
    for (std::size_t t = 0; t < dim(target_axis); ++t)
        probs.push_back((target_axis == 0 ? at(t, given_index) : at(given_index, t)) / mass);
    return Dist::create(axes_[target_axis].labels, std::move(probs), 1e-6);
}

std::size_t Joint::support_size() const {
    std::size_t n = 0;
    for (const Num& p : probs_)
        if (!p.is_zero_exact()) ++n;
    return n;
}

bool Joint::same_shape(const Joint& o) const {
    if (rank() != o.rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (axes_[i].labels != o.axes_[i].labels) return false;
    return true;
}

Channel Channel::create(std::vector<std::string> input_labels, std::vector<Dist> columns) {
    check_labels(input_labels, "Channel");
    if (input_labels.size() != columns.size())
        throw Error(Errc::invalid_argument, "Channel: one column per input required");
    for (const Dist& c : columns) {
        if (!c.same_alphabet(columns.front()))
            throw Error(Errc::alphabet_mismatch, "Channel: columns over different output alphabets");
        if (c.mode() != columns.front().mode())
            throw Error(Errc::mode_mismatch, "Channel: mixed-mode columns");
    }
    Channel ch;
    ch.input_labels_ = std::move(input_labels);
    ch.columns_ = std::move(columns);
    return ch;
}

Dist Channel::push_forward(const Dist& p) const {
    if (p.size() != inputs()) throw Error(Errc::alphabet_mismatch, "push_forward: input size mismatch");
    std::vector<Num> out(outputs(), Num::zero(mode()));
    for (std::size_t m = 0; m < inputs(); ++m)
        for (std::size_t c = 0; c < outputs(); ++c)
            out[c] = out[c] + p.prob(m) * columns_[m].prob(c);
    return Dist::create(output_labels(), std::move(out), 1e-6);
}

Joint Channel::joint_with_input(const Dist& p, std::string in_name, std::string out_name) const {
    if (p.size() != inputs()) throw Error(Errc::alphabet_mismatch, "joint_with_input: size mismatch");
    std::vector<Num> probs;
    probs.reserve(inputs() * outputs());
    for (std::size_t m = 0; m < inputs(); ++m)
        for (std::size_t c = 0; c < outputs(); ++c) probs.push_back(p.prob(m) * columns_[m].prob(c));
    return Joint::create({Axis{std::move(in_name), input_labels_},
                          Axis{std::move(out_name), output_labels()}},
                         std::move(probs), 1e-6);
}

bool Channel::all_columns_equal() const {
    for (std::size_t m = 1; m < inputs(); ++m)
        for (std::size_t c = 0; c < outputs(); ++c)
            if (!columns_[m].prob(c).eq_exact(columns_.front().prob(c))) return false;
    return true;
}

std::vector<std::vector<double>> Channel::to_double_rows() const {
    std::vector<std::vector<double>> rows;
    rows.reserve(inputs());
    for (const Dist& c : columns_) rows.push_back(c.to_doubles());
    return rows;
}

} // namespace itsec
