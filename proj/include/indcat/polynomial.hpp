#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace indcat {

using BigInt = boost::multiprecision::cpp_int;

// Dense univariate polynomial over arbitrary-precision signed integers.
// Index i holds the coefficient on x^i.  The stored vector is never empty and
// carries no trailing zeros; the zero polynomial is the single coefficient 0.
class Polynomial {
public:
    Polynomial() : c_{BigInt(0)} {}

    explicit Polynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
        normalize();
    }

    Polynomial(std::initializer_list<long long> coeffs) {
        c_.reserve(coeffs.size());
        for (long long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    const std::vector<BigInt>& coeffs() const { return c_; }

    // Coefficient on x^i, with 0 outside the stored range.  Window arithmetic
    // on coefficient sequences leans on this convention.
    BigInt coeff(std::ptrdiff_t i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return BigInt(0);
        return c_[static_cast<std::size_t>(i)];
    }

    // Degree of the zero polynomial is reported as 0.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }

    bool operator==(const Polynomial& other) const = default;

private:
    void normalize() {
        if (c_.empty()) c_.push_back(BigInt(0));
        while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

inline Polynomial add(const Polynomial& p, const Polynomial& q) {
    std::vector<BigInt> r(std::max(p.coeffs().size(), q.coeffs().size()), BigInt(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) r[i] += p.coeffs()[i];
    for (std::size_t i = 0; i < q.coeffs().size(); ++i) r[i] += q.coeffs()[i];
    return Polynomial(std::move(r));
}

inline Polynomial mul(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return Polynomial{};
    std::vector<BigInt> r(p.coeffs().size() + q.coeffs().size() - 1, BigInt(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < q.coeffs().size(); ++j)
            r[i + j] += p.coeffs()[i] * q.coeffs()[j];
    }
    return Polynomial(std::move(r));
}

// Row t of Pascal's triangle: the coefficients of (1+x)^t.
inline std::vector<BigInt> binomial_row(int t) {
    if (t < 0) throw std::invalid_argument("binomial_row: negative exponent");
    std::vector<BigInt> row{BigInt(1)};
    for (int i = 0; i < t; ++i) {
        std::vector<BigInt> next(row.size() + 1, BigInt(0));
        for (std::size_t j = 0; j < row.size(); ++j) {
            next[j] += row[j];
            next[j + 1] += row[j];
        }
        row = std::move(next);
    }
    return row;
}

// q * (1+x)^t by convolution with the binomial row.
inline Polynomial mul_binomial_power(const Polynomial& q, int t) {
    if (t < 0) throw std::invalid_argument("mul_binomial_power: negative exponent");
    if (t == 0) return q;
    return mul(q, Polynomial(binomial_row(t)));
}

// Multiply by x^e (shift coefficients up by e).
inline Polynomial mul_x_power(const Polynomial& p, int e = 1) {
    if (e < 0) throw std::invalid_argument("mul_x_power: negative exponent");
    if (p.is_zero() || e == 0) return p;
    std::vector<BigInt> r(p.coeffs().size() + static_cast<std::size_t>(e), BigInt(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) r[i + e] = p.coeffs()[i];
    return Polynomial(std::move(r));
}

inline BigInt evaluate_at_integer(const Polynomial& p, const BigInt& x0) {
    BigInt acc = 0;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * x0 + p.coeffs()[i];
    return acc;
}

// One exact division by (1+x).  Returns (quotient, true) when the division is
// exact, (unspecified, false) otherwise.
inline std::pair<Polynomial, bool> divide_by_one_plus_x(const Polynomial& p) {
    const auto& c = p.coeffs();
    if (p.is_zero()) return {Polynomial{}, true};
    if (c.size() == 1) return {Polynomial{}, false};
    std::vector<BigInt> r(c.size() - 1);
    r[0] = c[0];
    for (std::size_t i = 1; i + 1 < c.size(); ++i) r[i] = c[i] - r[i - 1];
    if (c.back() != r.back()) return {Polynomial{}, false};
    return {Polynomial(std::move(r)), true};
}

// Largest k with (1+x)^k dividing p exactly, plus the cofactor.
// The cofactor never vanishes at -1; re-multiplying reconstructs p.
inline std::pair<int, Polynomial> remove_binomial_factor(const Polynomial& p) {
    if (p.is_zero())
        throw std::domain_error("remove_binomial_factor: multiplicity of the zero polynomial is undefined");
    int k = 0;
    Polynomial q = p;
    for (;;) {
        auto [quot, ok] = divide_by_one_plus_x(q);
        if (!ok) break;
        q = std::move(quot);
        ++k;
    }
    return {k, q};
}

inline std::vector<std::string> coeff_strings(const Polynomial& p) {
    std::vector<std::string> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.str());
    return out;
}

}  // namespace indcat
