#include "opforge/ring.hpp"

namespace opforge {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

CoeffRing CoeffRing::prime_field(long p) {
    if (p >= (1L << 31) || !is_prime(p))
        throw std::invalid_argument("prime_field: p must be a prime < 2^31");
    return {Kind::PrimeField, p};
}

std::string CoeffRing::name() const {
    switch (kind) {
        case Kind::Rationals: return "Q";
        case Kind::Integers: return "Z";
        case Kind::PrimeField: return "F" + std::to_string(p);
    }
    return "?";
}

mpq_class CoeffRing::norm(const mpq_class& x) const {
    mpq_class v = x;
    v.canonicalize();
    switch (kind) {
        case Kind::Rationals:
            return v;
        case Kind::Integers:
            if (v.get_den() != 1) throw WrongRing("non-integer scalar over Z");
            return v;
        case Kind::PrimeField: {
            mpz_class den = v.get_den();
            mpz_class num = v.get_num();
            mpz_class pz(p);
            mpz_class num_mod = ((num % pz) + pz) % pz;
            if (den == 1) return mpq_class(num_mod);
            mpz_class den_inv;
            if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
                throw WrongRing("denominator not invertible mod p");
            return mpq_class((num_mod * den_inv) % pz);
        }
    }
    return v;
}

bool CoeffRing::is_unit(const mpq_class& a) const {
    mpq_class v = norm(a);
    if (v == 0) return false;
    if (kind == Kind::Integers) return v == 1 || v == -1;
    return true;
}

mpq_class CoeffRing::inv(const mpq_class& a) const {
    if (!is_unit(a)) throw WrongRing("inverse of a non-unit");
    if (kind == Kind::PrimeField) {
        mpq_class v = norm(a);
        mpz_class r;
        mpz_class pz(p);
        mpz_class num = v.get_num();
        mpz_invert(r.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
        return mpq_class(r);
    }
    return norm(1 / a);
}

mpq_class CoeffRing::div(const mpq_class& a, const mpq_class& b) const {
    if (kind == Kind::Integers) {
        mpq_class q = a / b;
        q.canonicalize();
        if (q.get_den() != 1) throw WrongRing("inexact division over Z");
        return q;
    }
    if (norm(b) == 0) throw WrongRing("division by zero");
    if (kind == Kind::PrimeField) return mul(a, inv(b));
    return norm(a / b);
}

mpq_class parse_scalar(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar: " + s);
    v.canonicalize();
    return v;
}

std::string scalar_to_string(const mpq_class& x) { return x.get_str(); }

}  // namespace opforge
