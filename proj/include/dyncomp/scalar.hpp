#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <memory>
#include <string>

namespace dyncomp {

// Element (a + b*sqrt(D))/c of a real quadratic field, kept in canonical
// form: c > 0, gcd(a, b, c) = 1, and D = 0 whenever b = 0.
class Scalar {
public:
    Scalar();
    Scalar(long n);  // NOLINT(google-explicit-constructor)
    Scalar(const mpz_class& n);  // NOLINT(google-explicit-constructor)
    Scalar(const Scalar& o);
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o);
    Scalar& operator=(Scalar&&) noexcept = default;
    ~Scalar() = default;

    static Scalar rational(const mpz_class& p, const mpz_class& q);
    // D must be a square-free integer >= 2 when b != 0.
    static Scalar quad(const mpz_class& a, const mpz_class& b, const mpz_class& c, long D);
    static Scalar sqrt_of(long D);  // sqrt(D), D square-free
    static Scalar pow2(long k);      // 2^k, k may be negative

    // "p", "p/q", or the triple "a b c" (read with the supplied D).
    static Scalar parse(const std::string& text, long D);

    mpz_class a() const { return big_ ? big_->a : mpz_class(sa_); }
    mpz_class b() const { return big_ ? big_->b : mpz_class(sb_); }
    mpz_class c() const { return big_ ? big_->c : mpz_class(sc_); }
    long D() const { return D_; }
    bool is_rational() const { return D_ == 0; }
    bool is_zero() const { return D_ == 0 && !big_ && sa_ == 0; }
    bool is_integer() const { return D_ == 0 && !big_ && sc_ == 1; }
    // Components fit in machine words (no GMP storage).
    bool is_small() const { return !big_; }

    int sign() const;
    double approx() const { return approx_; }
    double approx_error() const { return err_; }

    mpz_class floor() const;
    mpz_class ceil() const;
    Scalar frac() const;  // x - floor(x), in [0, 1)
    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    Scalar conjugate() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y);
    friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

    // Serialized as the triple "a b c".
    std::string triple() const;
    // "p/q" for rationals, "(a+b*sqrt(D))/c" otherwise.
    std::string str() const;

    friend int compare(const Scalar& x, const Scalar& y);

private:
    struct Big {
        mpz_class a, b, c;
    };

    // Canonicalizes, then stores inline when every component fits.
    void set_wide(__int128 a, __int128 b, __int128 c, long D);
    void set_big(mpz_class a, mpz_class b, mpz_class c, long D);
    void refresh_approx();

    // Inline components, valid when big_ is null; |value| < 2^62.
    long sa_ = 0, sb_ = 0, sc_ = 1;
    std::unique_ptr<Big> big_;
    long D_ = 0;
    double approx_ = 0.0;
    double err_ = 0.0;
};

int compare(const Scalar& x, const Scalar& y);
Scalar min(const Scalar& x, const Scalar& y);
Scalar max(const Scalar& x, const Scalar& y);

// Largest power of two 2^-k (k >= 0) that is <= x; x must be positive.
// Values >= 1 give 1.
Scalar dyadic_floor(const Scalar& x);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

bool is_squarefree(long D);

}  // namespace dyncomp
