#include "rsz/field.hpp"

namespace rsz {

FieldSpec FieldSpec::prime(unsigned p) {
    if (p < 2 || p >= (1u << 16))
        throw input_error("prime field characteristic must be a prime below 2^16");
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw input_error(std::to_string(p) + " is not prime");
    return {Kind::prime, p};
}

std::string FieldSpec::to_string() const {
    return kind == Kind::rationals ? "Q" : "F" + std::to_string(p);
}

mpq_class Field::norm(const mpq_class& x) const {
    if (spec_.kind == FieldSpec::Kind::rationals)
        return x;
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class pz(spec_.p);
    mpz_class n = num % pz;
    if (n < 0)
        n += pz;
    if (den == 1)
        return mpq_class(n);
    mpz_class d = den % pz;
    if (d < 0)
        d += pz;
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw input_error("denominator not invertible mod " + std::to_string(spec_.p));
    mpz_class r = (n * dinv) % pz;
    return mpq_class(r);
}

mpq_class Field::inv(const mpq_class& a) const {
    mpq_class x = norm(a);
    if (x == 0)
        throw precondition_error("division by zero in " + spec_.to_string());
    if (spec_.kind == FieldSpec::Kind::rationals)
        return 1 / x;
    mpz_class pz(spec_.p), v = x.get_num(), r;
    mpz_invert(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
    return mpq_class(r);
}

} // namespace rsz
