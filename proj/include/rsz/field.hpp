#pragma once

#include <string>

#include <gmpxx.h>

#include "rsz/errors.hpp"

namespace rsz {

// Exact coefficient field: the rationals or a prime field F_p, p < 2^16.
// Prime-field elements are stored as canonical integers in [0, p).
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    unsigned p = 0;

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec prime(unsigned p);

    bool operator==(const FieldSpec&) const = default;
    std::string to_string() const;
};

class Field {
public:
    explicit Field(FieldSpec spec) : spec_(spec) {}
    const FieldSpec& spec() const { return spec_; }
    bool is_prime_field() const { return spec_.kind == FieldSpec::Kind::prime; }
    unsigned p() const { return spec_.p; }

    // canonical form of an element (reduces integers mod p; maps a/b to
    // a * b^{-1} in the prime field)
    mpq_class norm(const mpq_class& x) const;

    mpq_class add(const mpq_class& a, const mpq_class& b) const { return norm(a + b); }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return norm(a - b); }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return norm(a * b); }
    mpq_class neg(const mpq_class& a) const { return norm(-a); }
    mpq_class inv(const mpq_class& a) const;

private:
    FieldSpec spec_;
};

} // namespace rsz
