#include "dyncomp/scalar.hpp"

#include "dyncomp/error.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <vector>

namespace dyncomp {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::MixedAmbient: return "MixedAmbient";
        case ErrorKind::CrossField: return "CrossField";
        case ErrorKind::NotNull: return "NotNull";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::NoGap: return "NoGap";
        case ErrorKind::BreakpointBudget: return "BreakpointBudget";
        case ErrorKind::CoverFailure: return "CoverFailure";
        case ErrorKind::NonTermination: return "NonTermination";
        case ErrorKind::InvalidPartition: return "InvalidPartition";
        case ErrorKind::DuplicateInput: return "DuplicateInput";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::UnprovenInput: return "UnprovenInput";
        case ErrorKind::NotDisjoint: return "NotDisjoint";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::PointOutside: return "PointOutside";
        case ErrorKind::NotContained: return "NotContained";
        case ErrorKind::NotSeparated: return "NotSeparated";
        case ErrorKind::GapNonpositive: return "GapNonpositive";
        case ErrorKind::UnrefinedTower: return "UnrefinedTower";
        case ErrorKind::ColumnDeficit: return "ColumnDeficit";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// Relative slack for the floating filter; get_d truncates and sqrt/mul/div
// each add one rounding, so a few ulps of the magnitude bound suffice.
constexpr double kFilter = 8e-15;

// Inline components stay below 2^62 so that sums of two products fit in i128.
constexpr long kSmallLimit = (1L << 62) - 1;

bool fits_small(i128 v) { return v <= kSmallLimit && v >= -kSmallLimit; }

// Overflow-tracking i128 arithmetic; `ok` turns false on the first overflow.
struct Checked {
    bool ok = true;
    i128 mul(i128 x, i128 y) {
        i128 r = 0;
        if (__builtin_mul_overflow(x, y, &r)) ok = false;
        return r;
    }
    i128 add(i128 x, i128 y) {
        i128 r = 0;
        if (__builtin_add_overflow(x, y, &r)) ok = false;
        return r;
    }
    i128 sub(i128 x, i128 y) {
        i128 r = 0;
        if (__builtin_sub_overflow(x, y, &r)) ok = false;
        return r;
    }
};

u128 uabs(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd_u128(u128 x, u128 y) {
    while (y != 0) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    return x;
}

mpz_class to_mpz(i128 v) {
    u128 u = uabs(v);
    mpz_class r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    return v < 0 ? mpz_class(-r) : r;
}

int sgn128(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Sign of A + B*sqrt(D) for integers A, B and square-free D >= 2.
int sign_ab(const mpz_class& A, const mpz_class& B, long D) {
    int sa = sgn(A), sb = sgn(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    mpz_class lhs = A * A;
    mpz_class rhs = B * B * D;
    int c = cmp(lhs, rhs);
    // a^2 > b^2 D means the rational part dominates.
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

int sign_ab(i128 A, i128 B, long D) {
    int sa = sgn128(A), sb = sgn128(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Checked ck;
    i128 lhs = ck.mul(A, A);
    i128 rhs = ck.mul(ck.mul(B, B), D);
    if (!ck.ok) return sign_ab(to_mpz(A), to_mpz(B), D);
    return lhs > rhs ? sa : (lhs < rhs ? sb : 0);
}

// Sign of p + q*sqrt(D1) + r*sqrt(D2) with distinct square-free D1, D2 and
// q, r both nonzero; the value is irrational, hence nonzero, so refining
// precision terminates.
int sign_cross(const mpz_class& p, const mpz_class& q, long D1, const mpz_class& r, long D2) {
    for (mp_bitcnt_t prec = 128;; prec *= 2) {
        mpf_class s1(D1, prec), s2(D2, prec);
        s1 = sqrt(s1);
        s2 = sqrt(s2);
        mpf_class v(p, prec);
        v += mpf_class(q, prec) * s1;
        v += mpf_class(r, prec) * s2;
        mpf_class mag(abs(p), prec);
        mag += mpf_class(abs(q), prec) * s1 + mpf_class(abs(r), prec) * s2 + 1;
        // Error of a few ulps relative to the magnitude.
        mpf_class bound = mag;
        mpf_div_2exp(bound.get_mpf_t(), bound.get_mpf_t(), prec - 8);
        if (abs(v) > bound) return sgn(v);
        if (prec > (1u << 20)) throw Error(ErrorKind::Internal, "cross-field comparison did not separate");
    }
}

mpz_class floor_div(const mpz_class& n, const mpz_class& d) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

long field_of(const Scalar& x, const Scalar& y) {
    if (x.D() == 0) return y.D();
    if (y.D() == 0 || y.D() == x.D()) return x.D();
    throw Error(ErrorKind::CrossField, "arithmetic mixes sqrt(" + std::to_string(x.D()) + ") and sqrt(" +
                                           std::to_string(y.D()) + ")");
}

}  // namespace

bool is_squarefree(long D) {
    if (D < 2) return false;
    for (long p = 2; p * p <= D; ++p)
        if (D % (p * p) == 0) return false;
    return true;
}

Scalar::Scalar() = default;

Scalar::Scalar(long n) {
    set_wide(n, 0, 1, 0);
}

Scalar::Scalar(const mpz_class& n) {
    set_big(n, 0, 1, 0);
}

Scalar::Scalar(const Scalar& o)
    : sa_(o.sa_),
      sb_(o.sb_),
      sc_(o.sc_),
      big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr),
      D_(o.D_),
      approx_(o.approx_),
      err_(o.err_) {}

Scalar& Scalar::operator=(const Scalar& o) {
    if (this == &o) return *this;
    sa_ = o.sa_;
    sb_ = o.sb_;
    sc_ = o.sc_;
    if (o.big_) {
        if (big_)
            *big_ = *o.big_;
        else
            big_ = std::make_unique<Big>(*o.big_);
    } else {
        big_.reset();
    }
    D_ = o.D_;
    approx_ = o.approx_;
    err_ = o.err_;
    return *this;
}

Scalar Scalar::rational(const mpz_class& p, const mpz_class& q) { return quad(p, 0, q, 0); }

Scalar Scalar::quad(const mpz_class& a, const mpz_class& b, const mpz_class& c, long D) {
    if (c == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
    if (b != 0 && !is_squarefree(D)) throw Error(ErrorKind::InvalidInput, "D must be square-free and >= 2");
    Scalar s;
    s.set_big(a, b, c, D);
    return s;
}

Scalar Scalar::sqrt_of(long D) { return quad(0, 1, 1, D); }

Scalar Scalar::pow2(long k) {
    mpz_class p = 1;
    if (k >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
        return Scalar(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    return rational(1, p);
}

Scalar Scalar::parse(const std::string& text, long D) {
    std::istringstream in(text);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    try {
        if (tok.size() == 3) return quad(mpz_class(tok[0]), mpz_class(tok[1]), mpz_class(tok[2]), D);
        if (tok.size() == 1) {
            auto slash = tok[0].find('/');
            if (slash == std::string::npos) return Scalar(mpz_class(tok[0]));
            return rational(mpz_class(tok[0].substr(0, slash)), mpz_class(tok[0].substr(slash + 1)));
        }
    } catch (const std::invalid_argument&) {
    }
    throw Error(ErrorKind::ParseError, "bad scalar '" + text + "'");
}

void Scalar::set_wide(i128 a, i128 b, i128 c, long D) {
    if (b == 0) D = 0;
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    u128 g = gcd_u128(gcd_u128(uabs(a), uabs(b)), static_cast<u128>(c));
    if (g > 1) {
        i128 gi = static_cast<i128>(g);
        a /= gi;
        b /= gi;
        c /= gi;
    }
    if (fits_small(a) && fits_small(b) && fits_small(c)) {
        sa_ = static_cast<long>(a);
        sb_ = static_cast<long>(b);
        sc_ = static_cast<long>(c);
        big_.reset();
        D_ = D;
        refresh_approx();
        return;
    }
    set_big(to_mpz(a), to_mpz(b), to_mpz(c), D);
}

void Scalar::set_big(mpz_class a, mpz_class b, mpz_class c, long D) {
    if (b == 0) D = 0;
    if (sgn(c) < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 1) {
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    D_ = D;
    auto small = [](const mpz_class& v) { return v.fits_slong_p() && fits_small(v.get_si()); };
    if (small(a) && small(b) && small(c)) {
        sa_ = a.get_si();
        sb_ = b.get_si();
        sc_ = c.get_si();
        big_.reset();
    } else {
        if (!big_) big_ = std::make_unique<Big>();
        big_->a = std::move(a);
        big_->b = std::move(b);
        big_->c = std::move(c);
    }
    refresh_approx();
}

void Scalar::refresh_approx() {
    double da, db, dc;
    if (big_) {
        da = big_->a.get_d();
        db = big_->b.get_d();
        dc = big_->c.get_d();
    } else {
        da = static_cast<double>(sa_);
        db = static_cast<double>(sb_);
        dc = static_cast<double>(sc_);
    }
    if (D_ == 0) {
        approx_ = da / dc;
        err_ = std::fabs(approx_) * kFilter;
    } else {
        db *= std::sqrt(static_cast<double>(D_));
        approx_ = (da + db) / dc;
        err_ = (std::fabs(da) + std::fabs(db)) / dc * kFilter;
    }
}

int Scalar::sign() const {
    if (!big_) return D_ == 0 ? sgn128(sa_) : sign_ab(i128(sa_), i128(sb_), D_);
    if (D_ == 0) return sgn(big_->a);
    return sign_ab(big_->a, big_->b, D_);
}

int compare(const Scalar& x, const Scalar& y) {
    double d = x.approx() - y.approx();
    double e = x.approx_error() + y.approx_error();
    if (d > e) return 1;
    if (d < -e) return -1;
    if (x.D() != 0 && y.D() != 0 && x.D() != y.D()) {
        // (ax c_y - ay c_x) + bx c_y sqrt(Dx) - by c_x sqrt(Dy)
        return sign_cross(x.a() * y.c() - y.a() * x.c(), x.b() * y.c(), x.D(), -(y.b() * x.c()), y.D());
    }
    long D = x.D() != 0 ? x.D() : y.D();
    if (!x.big_ && !y.big_) {
        // Products of inline components stay below 2^124.
        i128 A = i128(x.sa_) * y.sc_ - i128(y.sa_) * x.sc_;
        if (D == 0) return sgn128(A);
        i128 B = i128(x.sb_) * y.sc_ - i128(y.sb_) * x.sc_;
        return sign_ab(A, B, D);
    }
    mpz_class A = x.a() * y.c() - y.a() * x.c();
    if (D == 0) return sgn(A);
    mpz_class B = x.b() * y.c() - y.b() * x.c();
    return sign_ab(A, B, D);
}

bool operator==(const Scalar& x, const Scalar& y) {
    // Canonical form is unique and inline storage is used whenever it fits.
    if (x.D_ != y.D_ || bool(x.big_) != bool(y.big_)) return false;
    if (!x.big_) return x.sa_ == y.sa_ && x.sb_ == y.sb_ && x.sc_ == y.sc_;
    return x.big_->a == y.big_->a && x.big_->b == y.big_->b && x.big_->c == y.big_->c;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int c = compare(x, y);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Scalar min(const Scalar& x, const Scalar& y) { return compare(y, x) < 0 ? y : x; }
Scalar max(const Scalar& x, const Scalar& y) { return compare(y, x) > 0 ? y : x; }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (r.big_) {
        r.big_->a = -r.big_->a;
        r.big_->b = -r.big_->b;
    } else {
        r.sa_ = -r.sa_;
        r.sb_ = -r.sb_;
    }
    r.approx_ = -r.approx_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    long D = field_of(*this, o);
    if (!big_ && !o.big_) {
        if (sc_ == o.sc_) {
            set_wide(i128(sa_) + o.sa_, i128(sb_) + o.sb_, sc_, D);
        } else {
            set_wide(i128(sa_) * o.sc_ + i128(o.sa_) * sc_, i128(sb_) * o.sc_ + i128(o.sb_) * sc_,
                     i128(sc_) * o.sc_, D);
        }
        return *this;
    }
    mpz_class xa = a(), xb = b(), xc = c(), ya = o.a(), yb = o.b(), yc = o.c();
    set_big(xa * yc + ya * xc, xb * yc + yb * xc, xc * yc, D);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    long D = field_of(*this, o);
    if (!big_ && !o.big_) {
        if (sc_ == o.sc_) {
            set_wide(i128(sa_) - o.sa_, i128(sb_) - o.sb_, sc_, D);
        } else {
            set_wide(i128(sa_) * o.sc_ - i128(o.sa_) * sc_, i128(sb_) * o.sc_ - i128(o.sb_) * sc_,
                     i128(sc_) * o.sc_, D);
        }
        return *this;
    }
    mpz_class xa = a(), xb = b(), xc = c(), ya = o.a(), yb = o.b(), yc = o.c();
    set_big(xa * yc - ya * xc, xb * yc - yb * xc, xc * yc, D);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    long D = field_of(*this, o);
    if (!big_ && !o.big_) {
        Checked ck;
        i128 na = ck.add(i128(sa_) * o.sa_, ck.mul(i128(sb_) * o.sb_, D));
        i128 nb = i128(sa_) * o.sb_ + i128(sb_) * o.sa_;
        i128 nc = i128(sc_) * o.sc_;
        if (ck.ok) {
            set_wide(na, nb, nc, D);
            return *this;
        }
    }
    mpz_class xa = a(), xb = b(), xc = c(), ya = o.a(), yb = o.b(), yc = o.c();
    mpz_class na = xa * ya;
    if (D != 0) na += xb * yb * D;
    set_big(std::move(na), xa * yb + xb * ya, xc * yc, D);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.sign() == 0) throw Error(ErrorKind::InvalidInput, "division by zero");
    long D = field_of(*this, o);
    // x / y = x * c_y (a_y - b_y sqrt D) / (a_y^2 - b_y^2 D)
    if (!big_ && !o.big_) {
        Checked ck;
        i128 norm = ck.sub(i128(o.sa_) * o.sa_, ck.mul(i128(o.sb_) * o.sb_, D));
        i128 na = ck.sub(i128(sa_) * o.sa_, ck.mul(i128(sb_) * o.sb_, D));
        i128 nb = i128(sb_) * o.sa_ - i128(sa_) * o.sb_;
        i128 ra = ck.mul(na, o.sc_), rb = ck.mul(nb, o.sc_), rc = ck.mul(sc_, norm);
        if (ck.ok) {
            set_wide(ra, rb, rc, D);
            return *this;
        }
    }
    mpz_class xa = a(), xb = b(), xc = c(), ya = o.a(), yb = o.b(), yc = o.c();
    mpz_class norm = ya * ya;
    if (D != 0) norm -= yb * yb * D;
    mpz_class na = xa * ya;
    if (D != 0) na -= xb * yb * D;
    mpz_class nb = xb * ya - xa * yb;
    set_big(na * yc, nb * yc, xc * norm, D);
    return *this;
}

Scalar Scalar::conjugate() const {
    Scalar r = *this;
    if (r.big_)
        r.big_->b = -r.big_->b;
    else
        r.sb_ = -r.sb_;
    r.refresh_approx();
    return r;
}

mpz_class Scalar::floor() const {
    if (D_ == 0) {
        if (!big_) {
            long q = sa_ / sc_;
            if (sa_ % sc_ != 0 && sa_ < 0) --q;
            return mpz_class(q);
        }
        return floor_div(big_->a, big_->c);
    }
    mpz_class xa = a(), xb = b(), xc = c();
    mpz_class s = xb * xb * D_;
    mpz_sqrt(s.get_mpz_t(), s.get_mpz_t());  // floor(|b| sqrt D)
    mpz_class t = sgn(xb) > 0 ? s : mpz_class(-s - 1);
    mpz_class k = floor_div(xa + t, xc);
    while (compare(Scalar(k), *this) > 0) --k;
    while (compare(Scalar(mpz_class(k + 1)), *this) <= 0) ++k;
    return k;
}

mpz_class Scalar::ceil() const {
    mpz_class f = floor();
    if (compare(Scalar(f), *this) == 0) return f;
    return f + 1;
}

Scalar Scalar::frac() const {
    if (approx_ >= 0.0 && approx_ < 1.0 && approx_ - err_ > 0.0 && approx_ + err_ < 1.0) return *this;
    return *this - Scalar(floor());
}

std::string Scalar::triple() const { return a().get_str() + " " + b().get_str() + " " + c().get_str(); }

std::string Scalar::str() const {
    mpz_class xa = a(), xb = b(), xc = c();
    if (D_ == 0) return xc == 1 ? xa.get_str() : xa.get_str() + "/" + xc.get_str();
    std::string s = "(" + xa.get_str() + (sgn(xb) < 0 ? "-" : "+") + mpz_class(::abs(xb)).get_str() + "*sqrt(" +
                    std::to_string(D_) + "))";
    return xc == 1 ? s : s + "/" + xc.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

Scalar dyadic_floor(const Scalar& x) {
    if (x.sign() <= 0) throw Error(ErrorKind::InvalidInput, "dyadic_floor needs a positive value");
    if (compare(x, Scalar(1)) >= 0) return Scalar(1);
    long k = static_cast<long>(std::floor(-std::log2(x.approx()))) - 1;
    if (k < 0) k = 0;
    while (compare(Scalar::pow2(-k), x) > 0) ++k;
    while (k > 0 && compare(Scalar::pow2(-(k - 1)), x) <= 0) --k;
    return Scalar::pow2(-k);
}

}  // namespace dyncomp
