#include "zlab/cf.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace zlab {

namespace {

void validate_canonical(const std::vector<u64>& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 1) {
            std::ostringstream os;
            os << "digit " << i + 1 << " is zero";
            throw validation_error(os.str());
        }
    }
    if (!d.empty() && d.back() < 2) throw validation_error("last digit must be >= 2");
}

}  // namespace

DigitSeq::DigitSeq(std::vector<u64> digits) : digits_(std::move(digits)) {
    validate_canonical(digits_);
}

DigitSeq::DigitSeq(std::initializer_list<u64> digits) : digits_(digits) {
    validate_canonical(digits_);
}

std::string DigitSeq::str() const {
    std::ostringstream os;
    os << "[0;";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) os << ',';
        os << digits_[i];
    }
    os << ']';
    return os.str();
}

Rational Rational::make(BigInt a, BigInt q) {
    if (q <= 0) throw domain_error("Rational: denominator must be positive");
    if (a < 0 || a >= q) throw domain_error("Rational: numerator must lie in [0, q)");
    Rational r;
    r.reduced = boost::multiprecision::gcd(a, q) == 1;
    r.num = std::move(a);
    r.den = std::move(q);
    return r;
}

std::vector<u64> canonicalize(std::vector<u64> digits) {
    if (digits.size() >= 2 && digits.back() == 1) {
        digits.pop_back();
        digits.back() += 1;
    }
    return digits;
}

DigitSeq expand(const BigInt& a, const BigInt& q) {
    if (q <= 0) throw domain_error("expand: q must be positive");
    if (a < 0 || a >= q) throw domain_error("expand: a must lie in [0, q)");
    std::vector<u64> d;
    BigInt x = q, y = a;
    while (y != 0) {
        BigInt c = x / y;
        if (c > std::numeric_limits<u64>::max()) throw capacity_error("expand: partial quotient exceeds 64 bits");
        d.push_back(static_cast<u64>(c));
        BigInt r = x - c * y;
        x = y;
        y = r;
    }
    return DigitSeq(std::move(d));
}

std::vector<u64> expand_digits(i64 a, i64 q) {
    if (q <= 0) throw domain_error("expand: q must be positive");
    if (a < 0 || a >= q) throw domain_error("expand: a must lie in [0, q)");
    std::vector<u64> d;
    i64 x = q, y = a;
    while (y != 0) {
        d.push_back(static_cast<u64>(x / y));
        i64 r = x % y;
        x = y;
        y = r;
    }
    return d;
}

DigitSeq expand(i64 a, i64 q) { return DigitSeq(expand_digits(a, q)); }

BigInt continuant(std::vector<u64>::const_iterator first, std::vector<u64>::const_iterator last) {
    BigInt k = 1, km = 0;
    for (auto it = first; it != last; ++it) {
        if (*it < 1) throw validation_error("continuant: entries must be >= 1");
        BigInt next = BigInt(*it) * k + km;
        km = std::move(k);
        k = std::move(next);
    }
    return k;
}

BigInt continuant(const std::vector<u64>& digits) { return continuant(digits.begin(), digits.end()); }

u64 continuant_u64(const std::vector<u64>& digits) {
    unsigned __int128 k = 1, km = 0;
    for (u64 c : digits) {
        if (c < 1) throw validation_error("continuant: entries must be >= 1");
        unsigned __int128 next = c * k + km;
        if (next > std::numeric_limits<u64>::max()) throw capacity_error("continuant exceeds 64 bits");
        km = k;
        k = next;
    }
    return static_cast<u64>(k);
}

Rational evaluate(const DigitSeq& d) {
    const auto& c = d.digits();
    if (c.empty()) return Rational{0, 1, true};
    // numerator of [0;c_1..c_s] is K(c_2..c_s)
    Rational r;
    r.den = continuant(c.begin(), c.end());
    r.num = continuant(c.begin() + 1, c.end());
    r.reduced = true;
    return r;
}

ConvergentTable convergents(const DigitSeq& d) {
    ConvergentTable t;
    t.p.push_back(0);
    t.q.push_back(1);
    BigInt pm = 1, qm = 0;
    for (u64 c : d.digits()) {
        BigInt pn = BigInt(c) * t.p.back() + pm;
        BigInt qn = BigInt(c) * t.q.back() + qm;
        pm = t.p.back();
        qm = t.q.back();
        t.p.push_back(std::move(pn));
        t.q.push_back(std::move(qn));
    }
    return t;
}

u64 max_quotient(const DigitSeq& d) {
    if (d.empty()) throw domain_error("max_quotient: undefined for a = 0");
    return *std::max_element(d.digits().begin(), d.digits().end());
}

u64 sum_quotients(const DigitSeq& d) {
    if (d.empty()) throw domain_error("sum_quotients: undefined for a = 0");
    return std::accumulate(d.digits().begin(), d.digits().end(), u64{0});
}

// With s digits, a * q_{s-1} = (-1)^{s-1} (mod q). For odd s the reversal
// is the inverse itself; for even s it is q minus the inverse, so we take the
// complement [0;1,c_s - 1,...,c_1] instead.
DigitSeq inverse_digits(const DigitSeq& d) {
    if (d.empty()) throw domain_error("inverse_digits: a = 0 has no inverse");
    std::vector<u64> rev(d.digits().rbegin(), d.digits().rend());
    if (d.size() % 2 == 1) return DigitSeq(canonicalize(std::move(rev)));
    std::vector<u64> out;
    out.reserve(rev.size() + 1);
    out.push_back(1);
    out.push_back(rev[0] - 1);
    out.insert(out.end(), rev.begin() + 1, rev.end());
    return DigitSeq(canonicalize(std::move(out)));
}

std::vector<i64> convergent_denominators(i64 a, i64 q) {
    std::vector<i64> out;
    i64 x = q, y = mod_floor(a, q);
    i64 k = 1, km = 0;
    while (y != 0) {
        i64 c = x / y;
        i64 r = x % y;
        i64 next = c * k + km;
        km = k;
        k = next;
        out.push_back(k);
        x = y;
        y = r;
    }
    return out;
}

}  // namespace zlab
