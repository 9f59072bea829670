#include "dyncomp/systems.hpp"

#include "dyncomp/error.hpp"

#include <set>
#include <sstream>

namespace dyncomp {

System System::rotation(const Scalar& theta) {
    if (theta.is_rational()) throw Error(ErrorKind::InvalidInput, "rotation angle must be irrational");
    System s;
    s.kind_ = SystemKind::Rotation;
    s.thetas_ = {theta.frac()};
    return s;
}

System System::torus(const std::vector<Scalar>& thetas) {
    if (thetas.empty()) throw Error(ErrorKind::InvalidInput, "torus needs at least one angle");
    std::set<long> fields;
    for (const auto& t : thetas) {
        if (t.is_rational()) throw Error(ErrorKind::InvalidInput, "torus angles must be irrational");
        // Two irrationals from one quadratic field are dependent together with 1.
        if (!fields.insert(t.D()).second)
            throw Error(ErrorKind::InvalidInput, "torus angles must come from distinct quadratic fields");
    }
    System s;
    s.kind_ = SystemKind::Torus;
    for (const auto& t : thetas) s.thetas_.push_back(t.frac());
    return s;
}

System System::odometer(const std::vector<long>& bases, long level) {
    if (bases.empty()) throw Error(ErrorKind::InvalidInput, "odometer needs at least one base");
    if (level < 0) level = static_cast<long>(bases.size());
    if (level < 1 || level > static_cast<long>(bases.size()))
        throw Error(ErrorKind::InvalidInput, "truncation level out of range");
    System s;
    s.kind_ = SystemKind::Odometer;
    s.bases_ = bases;
    s.level_ = level;
    s.K_ = 1;
    for (long i = 0; i < level; ++i) {
        if (bases[i] < 2) throw Error(ErrorKind::InvalidInput, "odometer bases must be >= 2");
        if (s.K_ > (std::int64_t{1} << 40) / bases[i]) throw Error(ErrorKind::InvalidInput, "K_n too large");
        s.K_ *= bases[i];
    }
    return s;
}

std::int64_t System::K_at(long l) const {
    std::int64_t k = 1;
    for (long i = 0; i < l && i < level_; ++i) k *= bases_[i];
    return k;
}

std::string System::echo() const {
    std::ostringstream os;
    switch (kind_) {
        case SystemKind::Rotation:
            os << "system rotation\n";
            if (D() != 0) os << "D " << D() << "\n";
            os << "theta " << theta().triple() << "\n";
            break;
        case SystemKind::Torus:
            os << "system torus\n";
            for (const auto& t : thetas_) os << "theta " << t.D() << " " << t.triple() << "\n";
            break;
        case SystemKind::Odometer:
            os << "system odometer\nbases";
            for (long b : bases_) os << " " << b;
            os << "\nlevel " << level_ << "\n";
            break;
    }
    return os.str();
}

bool operator==(const System& x, const System& y) {
    return x.kind_ == y.kind_ && x.thetas_ == y.thetas_ && x.bases_ == y.bases_ && x.level_ == y.level_;
}

Point apply(const System& sys, const Point& p, long n) {
    Point r = p;
    if (sys.is_odometer()) {
        std::int64_t K = sys.K();
        std::int64_t v = (p.index + static_cast<std::int64_t>(n % K)) % K;
        r.index = v < 0 ? v + K : v;
        return r;
    }
    if (p.coords.size() != sys.thetas().size()) throw Error(ErrorKind::InvalidInput, "point dimension mismatch");
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = (p.coords[i] + Scalar(n) * sys.thetas()[i]).frac();
    return r;
}

std::vector<int> odometer_word(const System& sys, std::int64_t index) {
    std::vector<int> w;
    for (long i = 0; i < sys.level(); ++i) {
        w.push_back(static_cast<int>(index % sys.bases()[i]));
        index /= sys.bases()[i];
    }
    return w;
}

std::int64_t odometer_index(const System& sys, const std::vector<int>& digits) {
    if (static_cast<long>(digits.size()) != sys.level()) throw Error(ErrorKind::InvalidInput, "word length mismatch");
    std::int64_t idx = 0, place = 1;
    for (long i = 0; i < sys.level(); ++i) {
        if (digits[i] < 0 || digits[i] >= sys.bases()[i]) throw Error(ErrorKind::InvalidInput, "digit out of range");
        idx += digits[i] * place;
        place *= sys.bases()[i];
    }
    return idx;
}

std::int64_t odometer_index(const System& sys, const std::string& word) {
    std::vector<int> d;
    for (char ch : word) {
        if (ch < '0' || ch > '9') throw Error(ErrorKind::ParseError, "bad digit word '" + word + "'");
        d.push_back(ch - '0');
    }
    return odometer_index(sys, d);
}

Scalar circle_norm(const Scalar& x) {
    Scalar f = x.frac();
    return min(f, Scalar(1) - f);
}

Scalar min_orbit_gap(const System& sys, long N) {
    if (N < 1) throw Error(ErrorKind::InvalidInput, "min_orbit_gap needs N >= 1");
    if (sys.is_odometer()) {
        for (long l = 1; l <= sys.level(); ++l)
            if (sys.K_at(l) > N) return Scalar::rational(1, mpz_class(static_cast<long>(sys.K_at(l))));
        throw Error(ErrorKind::InvalidInput, "truncation level too coarse for N = " + std::to_string(N));
    }
    std::vector<Scalar> x(sys.thetas().size());
    Scalar best(1);
    for (long j = 1; j <= N; ++j) {
        Scalar d(0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = (x[i] + sys.thetas()[i]).frac();
            d = max(d, circle_norm(x[i]));
        }
        best = min(best, d);
    }
    return best;
}

}  // namespace dyncomp
