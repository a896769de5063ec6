#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "anskit/errors.hpp"

namespace anskit {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// An exact scalar. Integers have denominator 1; `inf` is only meaningful
// under NatInf. Values are interpreted by the Semiring that owns them.
class Value {
public:
    Value() = default;
    Value(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    explicit Value(BigInt n) : num_(std::move(n)) {}

    static Value rational(BigInt num, BigInt den) {
        if (den == 0) throw ValidationError("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
        Value v;
        if (g > 1) {
            num /= g;
            den /= g;
        }
        v.num_ = std::move(num);
        v.den_ = std::move(den);
        return v;
    }
    static Value rational(const BigRat& q) {
        return rational(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
    }
    static Value infinity() {
        Value v;
        v.inf_ = true;
        return v;
    }

    bool is_inf() const { return inf_; }
    bool is_zero() const { return !inf_ && num_ == 0; }
    bool is_integer() const { return !inf_ && den_ == 1; }
    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    BigRat to_rat() const {
        if (inf_) throw PreconditionError("infinite value has no rational image");
        return BigRat(num_, den_);
    }

    std::string str() const {
        if (inf_) return "inf";
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    // Total order used for containers; infinity sorts last.
    friend bool operator<(const Value& a, const Value& b) {
        if (a.inf_ || b.inf_) return !a.inf_ && b.inf_;
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

private:
    BigInt num_{0};
    BigInt den_{1};
    bool inf_ = false;
};

using Vec = std::vector<Value>;

enum class SemiringKind { Nat, NatInf, Int, IntMod, Bool, Rat };

class Semiring {
public:
    Semiring() = default;
    static Semiring nat() { return Semiring(SemiringKind::Nat); }
    static Semiring nat_inf() { return Semiring(SemiringKind::NatInf); }
    static Semiring integers() { return Semiring(SemiringKind::Int); }
    static Semiring boolean() { return Semiring(SemiringKind::Bool); }
    static Semiring rationals() { return Semiring(SemiringKind::Rat); }
    static Semiring modular(const BigInt& m) {
        if (m < 2) throw ValidationError("modulus must be at least 2");
        Semiring s(SemiringKind::IntMod);
        s.modulus_ = m;
        return s;
    }

    // Accepts Nat, NatInf, Int, Bool, Rat and IntMod:<m>.
    static Semiring parse(const std::string& text) {
        if (text == "Nat") return nat();
        if (text == "NatInf") return nat_inf();
        if (text == "Int") return integers();
        if (text == "Bool") return boolean();
        if (text == "Rat") return rationals();
        const std::string prefix = "IntMod:";
        if (text.rfind(prefix, 0) == 0) {
            std::string digits = text.substr(prefix.size());
            if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
                throw ValidationError("bad modulus in semiring '" + text + "'");
            return modular(BigInt(digits));
        }
        throw ValidationError("unknown semiring '" + text + "'");
    }

    SemiringKind kind() const { return kind_; }
    const BigInt& modulus() const { return modulus_; }

    std::string name() const {
        switch (kind_) {
            case SemiringKind::Nat: return "Nat";
            case SemiringKind::NatInf: return "NatInf";
            case SemiringKind::Int: return "Int";
            case SemiringKind::Bool: return "Bool";
            case SemiringKind::Rat: return "Rat";
            case SemiringKind::IntMod: return "IntMod:" + modulus_.str();
        }
        return "?";
    }

    bool is_finite() const { return kind_ == SemiringKind::Bool || kind_ == SemiringKind::IntMod; }
    bool embeds_in_rationals() const {
        return kind_ == SemiringKind::Nat || kind_ == SemiringKind::Int || kind_ == SemiringKind::Rat;
    }
    bool is_ring() const {
        return kind_ == SemiringKind::Int || kind_ == SemiringKind::Rat || kind_ == SemiringKind::IntMod;
    }
    bool has_norm() const {
        return kind_ == SemiringKind::Nat || kind_ == SemiringKind::Int || kind_ == SemiringKind::Rat;
    }

    Value zero() const { return Value(0); }
    Value one() const { return Value(1); }

    bool contains(const Value& v) const {
        if (v.is_inf()) return kind_ == SemiringKind::NatInf;
        switch (kind_) {
            case SemiringKind::Nat:
            case SemiringKind::NatInf: return v.is_integer() && v.num() >= 0;
            case SemiringKind::Int: return v.is_integer();
            case SemiringKind::Bool: return v.is_integer() && (v.num() == 0 || v.num() == 1);
            case SemiringKind::IntMod: return v.is_integer() && v.num() >= 0 && v.num() < modulus_;
            case SemiringKind::Rat: return true;
        }
        return false;
    }
    void check(const Value& v) const {
        if (!contains(v)) throw ValidationError("value " + v.str() + " is not an element of " + name());
    }

    // Canonical image of an integer (reduction mod m, truth value for Bool).
    Value from_int(const BigInt& n) const {
        switch (kind_) {
            case SemiringKind::IntMod: {
                BigInt r = n % modulus_;
                if (r < 0) r += modulus_;
                return Value(r);
            }
            case SemiringKind::Bool: return Value(n != 0 ? 1 : 0);
            case SemiringKind::Nat:
            case SemiringKind::NatInf:
                if (n < 0) throw ValidationError("negative value in " + name());
                return Value(n);
            default: return Value(n);
        }
    }

    Value add(const Value& a, const Value& b) const {
        switch (kind_) {
            case SemiringKind::NatInf:
                if (a.is_inf() || b.is_inf()) return Value::infinity();
                return Value(a.num() + b.num());
            case SemiringKind::Nat:
            case SemiringKind::Int: return Value(a.num() + b.num());
            case SemiringKind::Bool: return Value((a.num() != 0 || b.num() != 0) ? 1 : 0);
            case SemiringKind::IntMod: {
                BigInt s = a.num() + b.num();
                if (s >= modulus_) s -= modulus_;
                return Value(s);
            }
            case SemiringKind::Rat:
                if (a.den() == 1 && b.den() == 1) return Value(a.num() + b.num());
                return Value::rational(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
        }
        return {};
    }

    Value mul(const Value& a, const Value& b) const {
        switch (kind_) {
            case SemiringKind::NatInf:
                if (a.is_zero() || b.is_zero()) return Value(0);
                if (a.is_inf() || b.is_inf()) return Value::infinity();
                return Value(a.num() * b.num());
            case SemiringKind::Nat:
            case SemiringKind::Int: return Value(a.num() * b.num());
            case SemiringKind::Bool: return Value((a.num() != 0 && b.num() != 0) ? 1 : 0);
            case SemiringKind::IntMod: return Value(BigInt((a.num() * b.num()) % modulus_));
            case SemiringKind::Rat:
                if (a.den() == 1 && b.den() == 1) return Value(a.num() * b.num());
                return Value::rational(a.num() * b.num(), a.den() * b.den());
        }
        return {};
    }

    Value neg(const Value& a) const {
        switch (kind_) {
            case SemiringKind::Int: return Value(BigInt(-a.num()));
            case SemiringKind::Rat: return Value::rational(-a.num(), a.den());
            case SemiringKind::IntMod: return a.is_zero() ? a : Value(BigInt(modulus_ - a.num()));
            default: throw PreconditionError("semiring " + name() + " has no additive inverses");
        }
    }
    Value sub(const Value& a, const Value& b) const { return add(a, neg(b)); }

    // Absolute value, available for Nat, Int and Rat only.
    BigRat norm(const Value& a) const {
        if (!has_norm()) throw PreconditionError("no absolute value is defined on " + name());
        BigRat q = a.to_rat();
        return q < 0 ? BigRat(-q) : q;
    }

    Value parse_value(const std::string& text) const {
        Value v;
        if (text == "inf") {
            v = Value::infinity();
        } else {
            auto slash = text.find('/');
            auto parse_int = [&](const std::string& s) {
                std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
                if (s.size() == start || !std::all_of(s.begin() + static_cast<long>(start), s.end(), ::isdigit))
                    throw ValidationError("malformed number '" + text + "'");
                return BigInt(s);
            };
            if (slash == std::string::npos) {
                v = Value(parse_int(text));
            } else {
                v = Value::rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
            }
        }
        check(v);
        return v;
    }

    friend bool operator==(const Semiring& a, const Semiring& b) {
        return a.kind_ == b.kind_ && (a.kind_ != SemiringKind::IntMod || a.modulus_ == b.modulus_);
    }

private:
    explicit Semiring(SemiringKind k) : kind_(k) {}
    SemiringKind kind_ = SemiringKind::Int;
    BigInt modulus_{0};
};

enum class SemiringOp { Add, Mul };

inline Value semiring_op(const Semiring& sr, SemiringOp op, const Value& x, const Value& y) {
    sr.check(x);
    sr.check(y);
    return op == SemiringOp::Add ? sr.add(x, y) : sr.mul(x, y);
}

// Dense matrix over a semiring.
class Matrix {
public:
    Matrix() = default;
    Matrix(Semiring sr, std::size_t rows, std::size_t cols)
        : sr_(std::move(sr)), rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(const Semiring& sr, std::size_t n) {
        Matrix m(sr, n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = sr.one();
        return m;
    }
    static Matrix row(const Semiring& sr, const Vec& v) {
        Matrix m(sr, 1, v.size());
        m.data_ = v;
        return m;
    }
    static Matrix column(const Semiring& sr, const Vec& v) {
        Matrix m(sr, v.size(), 1);
        m.data_ = v;
        return m;
    }

    const Semiring& semiring() const { return sr_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Value& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, Value v) { data_[i * cols_ + j] = std::move(v); }
    const Vec& data() const { return data_; }
    Vec& data() { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Value& v) { return v.is_zero(); });
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.sr_ == b.sr_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Semiring sr_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

namespace detail {
inline void same_tag(const Matrix& a, const Matrix& b) {
    if (!(a.semiring() == b.semiring()))
        throw ValidationError("semiring mismatch: " + a.semiring().name() + " vs " + b.semiring().name());
}
}  // namespace detail

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    detail::same_tag(a, b);
    if (a.cols() != b.rows()) throw ValidationError("dimension mismatch in matrix product");
    const Semiring& sr = a.semiring();
    Matrix c(sr, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Value& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Value& y = b.at(k, j);
                if (y.is_zero()) continue;
                c.set(i, j, sr.add(c.at(i, j), sr.mul(x, y)));
            }
        }
    return c;
}

inline Matrix mat_add(const Matrix& a, const Matrix& b) {
    detail::same_tag(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("dimension mismatch in matrix sum");
    Matrix c(a.semiring(), a.rows(), a.cols());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.semiring().add(a.data()[i], b.data()[i]);
    return c;
}

inline Matrix mat_scalar(const Value& k, const Matrix& a) {
    a.semiring().check(k);
    Matrix c(a.semiring(), a.rows(), a.cols());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.semiring().mul(k, a.data()[i]);
    return c;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    detail::same_tag(a, b);
    const Semiring& sr = a.semiring();
    Matrix c(sr, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c.set(i * b.rows() + k, j * b.cols() + l, sr.mul(a.at(i, j), b.at(k, l)));
        }
    return c;
}

// Block-diagonal direct sum.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
    detail::same_tag(a, b);
    Matrix c(a.semiring(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return c;
}

// Row vector times matrix, skipping zero entries.
inline Vec vec_mat(const Semiring& sr, const Vec& v, const Matrix& m) {
    Vec out(m.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Value& y = m.at(i, j);
            if (y.is_zero()) continue;
            out[j] = sr.add(out[j], sr.mul(v[i], y));
        }
    }
    return out;
}

// Matrix times column vector.
inline Vec mat_vec(const Semiring& sr, const Matrix& m, const Vec& v) {
    Vec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Value& x = m.at(i, j);
            if (x.is_zero() || v[j].is_zero()) continue;
            out[i] = sr.add(out[i], sr.mul(x, v[j]));
        }
    return out;
}

inline Value dot(const Semiring& sr, const Vec& a, const Vec& b) {
    Value s = sr.zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        s = sr.add(s, sr.mul(a[i], b[i]));
    }
    return s;
}

// Maximum absolute row sum; requires a normed semiring.
inline BigRat max_row_sum_norm(const Matrix& m) {
    BigRat best = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigRat s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m.semiring().norm(m.at(i, j));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace anskit
