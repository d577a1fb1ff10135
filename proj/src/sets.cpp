#include "orlicz/sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "orlicz/parallel.hpp"

namespace orlicz {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

CSet::CSet(std::size_t dim, const std::vector<std::vector<double>>& corners) : dim_(dim) {
    for (const auto& c : corners) {
        if (c.size() != dim) throw std::invalid_argument("CSet: corner dimension mismatch");
        for (double v : c)
            if (!(v >= 0.0)) throw std::invalid_argument("CSet: corners must be nonnegative");
        flat_.insert(flat_.end(), c.begin(), c.end());
    }
}

std::vector<std::vector<double>> CSet::corners() const {
    std::vector<std::vector<double>> out;
    for (std::size_t j = 0; j < size(); ++j) {
        auto c = corner(j);
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

bool CSet::contains(std::span<const double> x) const {
    for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] < 0.0) return false;
    for (std::size_t j = 0; j < size(); ++j) {
        const double* c = flat_.data() + j * dim_;
        bool inside = true;
        for (std::size_t i = 0; i < dim_ && inside; ++i) inside = x[i] <= c[i];
        if (inside) return true;
    }
    return false;
}

std::optional<double> CSet::slice_sup(std::span<const double> x, std::size_t axis) const {
    std::optional<double> best;
    for (std::size_t i = 0; i < dim_; ++i)
        if (i != axis && x[i] < 0.0) return best;
    for (std::size_t j = 0; j < size(); ++j) {
        const double* c = flat_.data() + j * dim_;
        bool ok = true;
        for (std::size_t i = 0; i < dim_ && ok; ++i)
            if (i != axis) ok = x[i] <= c[i];
        if (ok && (!best || c[axis] > *best)) best = c[axis];
    }
    return best;
}

CSet CSet::clipped(std::span<const double> bounds) const {
    CSet out(dim_);
    out.flat_ = flat_;
    for (std::size_t j = 0; j < size(); ++j)
        for (std::size_t i = 0; i < dim_; ++i)
            out.flat_[j * dim_ + i] = std::min(out.flat_[j * dim_ + i], bounds[i]);
    return out;
}

std::string CSet::describe() const {
    std::string s = "cset{";
    for (std::size_t j = 0; j < size(); ++j) {
        s += "(";
        for (std::size_t i = 0; i < dim_; ++i) s += (i ? "," : "") + num(flat_[j * dim_ + i]);
        s += ")";
    }
    return s + "}";
}

bool cset_membership(const CSet& A, std::span<const double> x) {
    if (x.size() != A.dim()) throw std::invalid_argument("cset_membership: dimension mismatch");
    return A.contains(x);
}

CSet random_cset(std::size_t n, std::size_t j, std::span<const double> box, std::uint64_t seed) {
    if (j == 0) throw std::invalid_argument("random_cset: need at least one corner");
    if (box.size() != n) throw std::invalid_argument("random_cset: box dimension mismatch");
    Engine rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> corners(j, std::vector<double>(n));
    for (auto& c : corners)
        for (std::size_t i = 0; i < n; ++i) c[i] = box[i] * u(rng);
    return CSet(n, corners);
}

StairSet::StairSet(std::vector<double> xs, std::vector<double> heights)
    : xs_(std::move(xs)), heights_(std::move(heights)) {
    if (xs_.empty() || xs_.size() != heights_.size()) throw std::invalid_argument("StairSet: xs/heights mismatch");
    if (xs_[0] != 0.0) throw std::invalid_argument("StairSet: xs[0] must be 0");
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        if (!(heights_[k] >= 0.0)) throw std::invalid_argument("StairSet: heights must be nonnegative");
        if (k > 0 && !(xs_[k] > xs_[k - 1])) throw std::invalid_argument("StairSet: xs must increase");
        if (k > 0 && heights_[k] > heights_[k - 1]) throw std::invalid_argument("StairSet: heights must not increase");
    }
}

bool StairSet::contains(double x, double y) const {
    if (x < 0.0 || y < 0.0) return false;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - xs_.begin()) - 1;
    return y <= heights_[k];
}

double StairSet::area() const {
    if (heights_.back() > 0.0) return std::numeric_limits<double>::infinity();
    double a = 0.0;
    for (std::size_t k = 0; k + 1 < xs_.size(); ++k) a += (xs_[k + 1] - xs_[k]) * heights_[k];
    return a;
}

CSet StairSet::to_cset(double x_max) const {
    std::vector<std::vector<double>> corners;
    for (std::size_t k = 0; k + 1 < xs_.size(); ++k) corners.push_back({xs_[k + 1], heights_[k]});
    if (heights_.back() > 0.0) corners.push_back({std::max(x_max, xs_.back()), heights_.back()});
    return CSet(2, corners);
}

DownSet2D as_downset(const CSet& A) {
    if (A.dim() != 2) throw std::invalid_argument("as_downset: need a planar c-set");
    double extent = 0.0;
    for (std::size_t j = 0; j < A.size(); ++j) extent = std::max(extent, A.corner(j)[0]);
    return DownSet2D{[A](double x) { return A.slice_sup(std::vector<double>{x, 0.0}, 1); }, extent};
}

StairSet stair_approximate(const DownSet2D& A, unsigned m) {
    if (!std::isfinite(A.x_extent) || A.x_extent < 0.0) throw std::invalid_argument("stair_approximate: unbounded set");
    if (m > 30) throw std::invalid_argument("stair_approximate: resolution too fine");
    const double n = std::ldexp(1.0, static_cast<int>(m));
    std::vector<double> xs, hs;
    for (std::size_t k = 0;; ++k) {
        const double x = static_cast<double>(k) / n;
        if (x > A.x_extent) break;
        const auto col = A.column(x);
        if (!col) break;
        if (!std::isfinite(*col)) throw std::invalid_argument("stair_approximate: unbounded column");
        if (!hs.empty() && *col == hs.back()) continue;
        xs.push_back(x);
        hs.push_back(*col);
    }
    if (xs.empty()) return StairSet({0.0}, {0.0});
    if (hs.back() > 0.0) {
        const double last = std::floor(A.x_extent * n) / n + 1.0 / n;
        xs.push_back(last);
        hs.push_back(0.0);
    }
    return StairSet(std::move(xs), std::move(hs));
}

StairSet stair_approximate(const CSet& A, unsigned m) { return stair_approximate(as_downset(A), m); }

double ScalarMap::operator()(double v) const {
    switch (kind) {
        case Kind::identity: return v;
        case Kind::tanh: return std::tanh(v / param);
        case Kind::clamp: return std::min(v, param);
        case Kind::sqrt: return std::sqrt(std::max(v, 0.0));
        case Kind::log1p: return std::log1p(std::max(v, 0.0));
    }
    return v;
}

std::string ScalarMap::describe() const {
    static const char* names[] = {"id", "tanh", "clamp", "sqrt", "log1p"};
    return std::string(names[static_cast<int>(kind)]) + "(" + num(param) + ")";
}

MonotoneFn::MonotoneFn(Base base, std::size_t dim, ScalarMap outer)
    : base_(std::move(base)), dim_(dim), outer_(outer) {
    if (const auto* c = std::get_if<CSetComplement>(&base_)) {
        if (c->set.dim() != dim) throw std::invalid_argument("MonotoneFn: set dimension mismatch");
    } else if (const auto* p = std::get_if<Polynomial>(&base_)) {
        if (p->coef.size() != p->exponents.size()) throw std::invalid_argument("MonotoneFn: monomial count mismatch");
        for (std::size_t k = 0; k < p->coef.size(); ++k) {
            if (!(p->coef[k] >= 0.0)) throw std::invalid_argument("MonotoneFn: coefficients must be nonnegative");
            if (p->exponents[k].size() != dim) throw std::invalid_argument("MonotoneFn: exponent dimension mismatch");
        }
    } else {
        const auto& w = std::get<MaxScaled>(base_).weights;
        if (w.size() != dim) throw std::invalid_argument("MonotoneFn: weight dimension mismatch");
        for (double v : w)
            if (!(v >= 0.0)) throw std::invalid_argument("MonotoneFn: weights must be nonnegative");
    }
}

double MonotoneFn::operator()(std::span<const double> x) const {
    double v = 0.0;
    if (const auto* c = std::get_if<CSetComplement>(&base_)) {
        v = c->set.contains(x) ? 0.0 : 1.0;
    } else if (const auto* p = std::get_if<Polynomial>(&base_)) {
        for (std::size_t k = 0; k < p->coef.size(); ++k) {
            double term = p->coef[k];
            for (std::size_t i = 0; i < dim_; ++i)
                for (unsigned e = 0; e < p->exponents[k][i]; ++e) term *= x[i];
            v += term;
        }
    } else {
        const auto& w = std::get<MaxScaled>(base_).weights;
        v = w[0] * x[0];
        for (std::size_t i = 1; i < dim_; ++i) v = std::max(v, w[i] * x[i]);
    }
    return outer_(v);
}

std::string MonotoneFn::describe() const {
    std::string s;
    if (const auto* c = std::get_if<CSetComplement>(&base_)) {
        s = "notin:" + c->set.describe();
    } else if (const auto* p = std::get_if<Polynomial>(&base_)) {
        s = "poly{";
        for (std::size_t k = 0; k < p->coef.size(); ++k) {
            s += num(p->coef[k]) + "*";
            for (unsigned e : p->exponents[k]) s += std::to_string(e) + ".";
            s += ";";
        }
        s += "}";
    } else {
        s = "max{";
        for (double w : std::get<MaxScaled>(base_).weights) s += num(w) + ",";
        s += "}";
    }
    return outer_.describe() + "o" + s;
}

RadiusFn::RadiusFn(Base base, std::size_t dim, ScalarMap outer) : base_(std::move(base)), dim_(dim), outer_(outer) {
    if (const auto* a = std::get_if<AbsLinear>(&base_)) {
        if (a->a.size() != dim) throw std::invalid_argument("RadiusFn: coefficient dimension mismatch");
    } else {
        const auto& rows = std::get<HomogeneousMax>(base_).rows;
        if (rows.empty()) throw std::invalid_argument("RadiusFn: need at least one row");
        for (const auto& r : rows)
            if (r.size() != dim) throw std::invalid_argument("RadiusFn: row dimension mismatch");
    }
}

double RadiusFn::operator()(std::span<const double> x) const {
    auto dot = [&](const std::vector<double>& a) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) s += a[i] * x[i];
        return std::fabs(s);
    };
    double v = 0.0;
    if (const auto* a = std::get_if<AbsLinear>(&base_)) {
        v = dot(a->a);
    } else {
        for (const auto& r : std::get<HomogeneousMax>(base_).rows) v = std::max(v, dot(r));
    }
    return outer_(v);
}

std::string RadiusFn::describe() const {
    std::string s;
    if (const auto* a = std::get_if<AbsLinear>(&base_)) {
        s = "abs{";
        for (double v : a->a) s += num(v) + ",";
        s += "}";
    } else {
        s = "hmax{";
        for (const auto& r : std::get<HomogeneousMax>(base_).rows) {
            for (double v : r) s += num(v) + ",";
            s += ";";
        }
        s += "}";
    }
    return outer_.describe() + "o" + s;
}

}  // namespace orlicz
