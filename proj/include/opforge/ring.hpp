#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace opforge {

// Exact scalar arithmetic in one of three coefficient rings.
// All scalars are carried as mpq_class; the ring dictates the canonical
// form: lowest terms for Q, denominator 1 for Z, representative in [0,p)
// with denominator 1 for F_p.
struct CoeffRing {
    enum class Kind { Rationals, Integers, PrimeField };

    Kind kind = Kind::Rationals;
    long p = 0;  // only for PrimeField, p < 2^31 and prime

    static CoeffRing rationals() { return {Kind::Rationals, 0}; }
    static CoeffRing integers() { return {Kind::Integers, 0}; }
    static CoeffRing prime_field(long p);

    bool is_field() const { return kind != Kind::Integers; }
    bool char_zero() const { return kind != Kind::PrimeField; }
    long characteristic() const { return kind == Kind::PrimeField ? p : 0; }

    bool operator==(const CoeffRing& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const CoeffRing& o) const { return !(*this == o); }

    std::string name() const;

    // Canonical form of a scalar in this ring. Throws if a rational with
    // nontrivial denominator is forced into Z, or if the denominator is
    // divisible by p in F_p.
    mpq_class norm(const mpq_class& x) const;

    mpq_class add(const mpq_class& a, const mpq_class& b) const { return norm(a + b); }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return norm(a - b); }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return norm(a * b); }
    mpq_class neg(const mpq_class& a) const { return norm(-a); }

    // Multiplicative inverse; throws for non-units.
    mpq_class inv(const mpq_class& a) const;
    bool is_unit(const mpq_class& a) const;

    // Exact division: throws over Z when b does not divide a.
    mpq_class div(const mpq_class& a, const mpq_class& b) const;
};

struct WrongRing : std::runtime_error {
    explicit WrongRing(const std::string& msg) : std::runtime_error(msg) {}
};

struct RingMismatch : std::runtime_error {
    explicit RingMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

bool is_prime(long n);

// Parse "num" or "num/den" into an exact rational.
mpq_class parse_scalar(const std::string& s);
std::string scalar_to_string(const mpq_class& x);

}  // namespace opforge
