#ifndef FRACMOM_EXPONENT_HPP
#define FRACMOM_EXPONENT_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "fracmom/errors.hpp"
#include "fracmom/rational.hpp"

namespace fracmom {

// Multi-index alpha in Q_+^n; components are normalized non-negative rationals.
class ExponentVector {
public:
    ExponentVector() = default;

    explicit ExponentVector(std::vector<Rational> comps) : comps_(std::move(comps)) {
        for (const auto& c : comps_)
            if (c < 0) throw DomainError("negative exponent component");
    }

    static ExponentVector zero(std::size_t n) {
        return ExponentVector(std::vector<Rational>(n, Rational(0)));
    }

    // e_j scaled by k (1-based j)
    static ExponentVector unit(std::size_t n, std::size_t j, const Rational& k = Rational(1)) {
        std::vector<Rational> v(n, Rational(0));
        v.at(j - 1) = k;
        return ExponentVector(std::move(v));
    }

    std::size_t dim() const { return comps_.size(); }
    const Rational& operator[](std::size_t i) const { return comps_[i]; }
    const std::vector<Rational>& components() const { return comps_; }

    Rational total() const {
        Rational s(0);
        for (const auto& c : comps_) s += c;
        return s;
    }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (c != 0) return false;
        return true;
    }

    // lcm of component denominators
    unsigned long denominator_lcm() const {
        unsigned long l = 1;
        for (const auto& c : comps_) l = lcm_ui(l, denominator_ui(c));
        return l;
    }

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
        if (a.dim() != b.dim()) throw DimensionMismatch("exponent dimension mismatch");
        std::vector<Rational> v(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) v[i] = a.comps_[i] + b.comps_[i];
        return ExponentVector(std::move(v));
    }

    // canonical total order: lexicographic on normalized components
    friend bool operator<(const ExponentVector& a, const ExponentVector& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (std::size_t i = 0; i < a.dim(); ++i) {
            int c = cmp(a.comps_[i], b.comps_[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return a.comps_ == b.comps_;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ",";
            s += format_rational(comps_[i]);
        }
        return s + ")";
    }

private:
    std::vector<Rational> comps_;
};

} // namespace fracmom

#endif
