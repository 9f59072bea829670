// Command-line front end.
//
// Exit codes: 0 success, 1 usage or input-file error, 2 GapNonpositive,
// 3 verification failure, 10 + ErrorKind index for any other library error.

#include "dyncomp/comparison.hpp"
#include "dyncomp/error.hpp"
#include "dyncomp/io.hpp"
#include "dyncomp/plfun.hpp"
#include "dyncomp/smallness.hpp"
#include "dyncomp/towers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

using namespace dyncomp;

namespace {

constexpr int kUsage = 1;
constexpr int kGap = 2;
constexpr int kVerifyFailed = 3;

struct Options {
    std::string spec, out, cert;
    std::string epsilon, sigma_fraction;
    long depth = -1;
    std::uint64_t seed = 0;
    std::vector<std::string> base;
    std::string base_region = "Y";
    std::vector<std::string> partition;
    std::string c_name = "C", u_name = "U";
    std::string a_name = "A", b_name = "B";
    std::string f_name = "F", e_name = "E";
    long q = 10946;
    long K = 64;
    long trials = 500;
    long samples = 100000;
};

SpecFile load(const Options& o) {
    if (o.spec.empty()) throw CLI::ValidationError("--spec", "a spec file is required");
    SpecFile s = read_spec(o.spec);
    // The environment variable wins over the params block of the spec file.
    if (s.bp_cap && std::getenv("DYNCOMP_BP_CAP") == nullptr)
        setenv("DYNCOMP_BP_CAP", std::to_string(*s.bp_cap).c_str(), 1);
    return s;
}

long depth_of(const Options& o, const SpecFile& s, long fallback) {
    if (o.depth >= 0) return o.depth;
    return s.search_depth.value_or(fallback);
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
}

// Base arc from `--base lo hi` (scalars or the word "theta"), else the
// named region, else [0, theta] on a rotation.
Region base_of(const Options& o, const SpecFile& s) {
    if (o.base.empty()) {
        if (s.regions.count(o.base_region) == 0 && s.system.is_rotation())
            return CircleSet::closed_arc(0, s.system.theta());
        return s.region(o.base_region);
    }
    if (o.base.size() != 2 || !s.system.is_rotation())
        throw CLI::ValidationError("--base", "expects two endpoints on a rotation");
    auto val = [&](const std::string& t) { return t == "theta" ? s.system.theta() : parse_scalar(t, s.system.D()); };
    return CircleSet::closed_arc(val(o.base[0]), val(o.base[1]));
}

int cmd_tower(const Options& o) {
    SpecFile s = load(o);
    auto tower = build_tower(s.system, base_of(o, s));
    auto rep = check_tower(tower);
    emit(o, format_tower(tower));
    std::cout << "levels " << tower.level_count() << "\n";
    std::cout << "check " << (rep.ok() ? "ok" : "failed") << "\n";
    return rep.ok() ? 0 : kVerifyFailed;
}

int cmd_refine(const Options& o) {
    SpecFile s = load(o);
    std::vector<Region> parts;
    for (const auto& name : o.partition) parts.push_back(s.region(name));
    auto tower = refine_tower(build_tower(s.system, base_of(o, s)), parts);
    auto rep = check_tower(tower);
    emit(o, format_tower(tower));
    std::cout << "check " << (rep.ok() ? "ok" : "failed") << "\n";
    return rep.ok() ? 0 : kVerifyFailed;
}

void print_summary(const ComparisonWitness& w) {
    const auto& s = w.summary;
    std::cout << "entries " << w.size() << "\n";
    if (w.kind == AmbientKind::Cylinders) return;
    std::cout << "birkhoff N0 " << s.N0 << " N1 " << s.N1 << " sigma " << scalar_text(s.sigma) << "\n";
    std::cout << "tower N " << s.tower_N << " columns " << s.heights.size() << " attempts " << s.attempts << "\n";
    for (std::size_t k = 0; k < s.heights.size(); ++k) {
        std::cout << "column " << k << " height " << s.heights[k];
        if (k < s.empty_interior.size() && s.empty_interior[k]) std::cout << " empty-interior";
        std::cout << "\n";
    }
    for (const auto& m : s.matching.columns) {
        std::cout << "match column " << m.column << " C-levels " << m.N_C.size() << " U0-levels " << m.N_U0.size();
        if (!m.d.empty()) {
            auto [lo, hi] = std::minmax_element(m.d.begin(), m.d.end());
            std::cout << " shifts " << *lo << ".." << *hi;
        }
        std::cout << "\n";
    }
    std::cout << "leftover points " << s.leftover_points << "\n";
}

int finish_witness(const Options& o, const SpecFile& s, const ComparisonWitness& w) {
    auto rep = verify_witness(s.system, w.C, w.U, w);
    std::string text = emit_certificate(s.system, w, rep);
    if (!o.out.empty()) write_file(o.out, text);
    print_summary(w);
    for (const auto& n : rep.notes) std::cout << "note " << n << "\n";
    std::cout << "verified " << (rep.ok() ? "yes" : "no") << "\n";
    return rep.ok() ? 0 : kVerifyFailed;
}

int cmd_compare(const Options& o) {
    SpecFile s = load(o);
    auto w = dynamic_comparison(s.system, s.region(o.c_name), s.region(o.u_name));
    return finish_witness(o, s, w);
}

int cmd_clopen(const Options& o) {
    SpecFile s = load(o);
    const Region& A = s.region(o.a_name);
    const Region& B = s.region(o.b_name);
    if (A.kind() != AmbientKind::Cylinders || B.kind() != AmbientKind::Cylinders)
        throw CLI::ValidationError("clopen-compare", "needs odometer regions");
    return finish_witness(o, s, clopen_comparison(s.system, A.cyl(), B.cyl()));
}

int cmd_verify(const Options& o) {
    SpecFile s = load(o);
    if (o.cert.empty()) throw CLI::ValidationError("--cert", "a certificate is required");
    Certificate cert;
    try {
        cert = parse_certificate(read_file(o.cert));
    } catch (const Error& e) {
        std::cerr << "certificate rejected: " << e.what() << "\n";
        return kVerifyFailed;
    }
    if (!(cert.system == s.system)) {
        std::cerr << "certificate system differs from the spec file\n";
        return kVerifyFailed;
    }
    if (!(cert.witness.C == s.region(o.c_name)) || !(cert.witness.U == s.region(o.u_name))) {
        std::cerr << "certificate inputs differ from the spec file regions\n";
        return kVerifyFailed;
    }
    auto rep = verify_witness(s.system, cert.witness.C, cert.witness.U, cert.witness);
    const bool got[] = {rep.range, rep.sum_on_C, rep.disjoint, rep.contained};
    bool agree = true;
    for (std::size_t i = 0; i < 4; ++i) {
        std::cout << "clause " << cert.verdicts[i].first << " " << (got[i] ? "pass" : "fail") << "\n";
        if (cert.verdicts[i].second != got[i]) agree = false;
    }
    for (const auto& n : rep.notes) std::cout << "note " << n << "\n";
    if (!agree) std::cout << "note recorded verdicts differ from the recomputed ones\n";
    std::cout << "verified " << (rep.ok() && agree ? "yes" : "no") << "\n";
    return rep.ok() && agree ? 0 : kVerifyFailed;
}

Scalar sigma_fraction_of(const Options& o, const SpecFile& s) {
    if (!o.sigma_fraction.empty()) return parse_scalar(o.sigma_fraction, 0);
    return s.sigma_fraction.value_or(Scalar::rational(1, 2));
}

BirkhoffCertificate certificate_of(const Options& o, const SpecFile& s) {
    const Region& F = s.region(o.f_name);
    const Region& E = s.region(o.e_name);
    if (F.kind() != AmbientKind::Circle || E.kind() != AmbientKind::Circle)
        throw CLI::ValidationError("birkhoff", "needs circle regions");
    return birkhoff_certificate(s.system, F.circle(), E.circle(), sigma_fraction_of(o, s));
}

int cmd_birkhoff(const Options& o) {
    SpecFile s = load(o);
    auto cert = certificate_of(o, s);
    std::cout << "N0 " << cert.N0 << "\n";
    std::cout << "sigma " << scalar_text(cert.sigma) << "\n";
    std::cout << "m0 " << scalar_text(cert.m0) << "\n";
    std::cout << "N1 " << cert.N1 << "\n";
    std::cout << "max|g| " << scalar_text(cert.max_abs_g) << "\n";
    bool ok = true;
    for (long N : {cert.N1, cert.N1 + 1, 2 * cert.N1}) {
        bool c = birkhoff_spot_check(s.system, cert, N);
        ok = ok && c;
        std::cout << "spot N=" << N << " " << (c ? "pass" : "fail") << "\n";
    }
    return ok ? 0 : kVerifyFailed;
}

int cmd_smallness(const Options& o) {
    SpecFile s = load(o);
    auto cert = smallness_constant(s.system, s.region(o.f_name), depth_of(o, s, 64));
    std::ostringstream os;
    os << "constant " << cert.constant << "\n";
    os << "verdict " << (cert.verdict == Verdict::Proven ? "proven" : "bounded-search") << "\n";
    if (cert.verdict == Verdict::BoundedSearch) os << "depth " << cert.search_depth << "\n";
    os << "witness";
    for (long d : cert.witness) os << " " << d;
    os << "\n";
    emit(o, os.str());
    return 0;
}

int cmd_thincover(const Options& o) {
    SpecFile s = load(o);
    const Region& F = s.region(o.f_name);
    const Region& U = s.region(o.u_name);
    if (F.kind() != AmbientKind::Circle || U.kind() != AmbientKind::Circle)
        throw CLI::ValidationError("thincover", "needs circle regions");
    std::optional<Scalar> eps = s.epsilon;
    if (!o.epsilon.empty()) eps = parse_scalar(o.epsilon, s.system.D());
    if (eps) {
        // Leftover cover with total measure below epsilon.
        auto lc = leftover_cover(s.system, F.circle(), U.circle(), *eps, depth_of(o, s, 1'000'000));
        bool ok = check_leftover_cover(s.system, F.circle(), U.circle(), lc).ok();
        std::ostringstream os;
        for (std::size_t j = 0; j < lc.W.size(); ++j) {
            os << "shift " << lc.shifts[j] << "\n";
            for (const auto& l : region_lines(lc.W[j])) os << "  " << l << "\n";
        }
        os << "verified " << (ok ? "yes" : "no") << "\n";
        emit(o, os.str());
        return ok ? 0 : kVerifyFailed;
    }
    auto cover = thin_cover(s.system, F.circle(), U.circle(), depth_of(o, s, 1000));
    bool ok = verify_thin_cover(s.system, F.circle(), U.circle(), cover);
    std::ostringstream os;
    for (std::size_t j = 0; j < cover.opens.size(); ++j) {
        os << "shift " << cover.shifts[j] << "\n";
        for (const auto& l : region_lines(cover.opens[j])) os << "  " << l << "\n";
    }
    os << "verified " << (ok ? "yes" : "no") << "\n";
    emit(o, os.str());
    return ok ? 0 : kVerifyFailed;
}

// Rational rotation by p/q on Z/q with p/q close to theta; base points are
// the i with i/q in the base.
int cmd_oracle_return_times(const Options& o) {
    SpecFile s = load(o);
    if (!s.system.is_rotation()) throw CLI::ValidationError("oracle", "return-times needs a rotation");
    if (o.q < 2) throw CLI::ValidationError("--q", "must be at least 2");
    Region Y = base_of(o, s);
    auto tower = build_tower(s.system, Y);
    const Scalar& th = s.system.theta();
    Scalar qs(o.q);
    long p = (th * qs + Scalar::rational(1, 2)).floor().get_si();
    std::vector<char> in(static_cast<std::size_t>(o.q));
    for (long i = 0; i < o.q; ++i) in[static_cast<std::size_t>(i)] = Y.circle().contains(Scalar::rational(i, o.q));
    std::map<long, long> counts;
    for (long i = 0; i < o.q; ++i) {
        if (!in[static_cast<std::size_t>(i)]) continue;
        long x = i, r = 0;
        do {
            x = (x + p) % o.q;
            ++r;
        } while (!in[static_cast<std::size_t>(x)]);
        ++counts[r];
    }
    std::map<long, Scalar> exact;
    for (const auto& c : tower.columns) {
        auto it = exact.emplace(c.height, Scalar(0)).first;
        it->second += measure(s.system, c.base);
    }
    std::cout << "oracle p/q " << p << "/" << o.q << "\n";
    bool agree = counts.size() == exact.size();
    for (const auto& [h, n] : counts) {
        auto it = exact.find(h);
        double expect = it == exact.end() ? 0.0 : it->second.approx() * static_cast<double>(o.q);
        // Each column boundary moves at most one lattice point per column.
        bool close = it != exact.end() && std::fabs(static_cast<double>(n) - expect) <= 2.0 * exact.size() + 1.0;
        agree = agree && close;
        std::cout << "return " << h << " count " << n << " expected " << expect << "\n";
    }
    std::cout << (agree ? "agree" : "disagree") << "\n";
    return agree ? 0 : kVerifyFailed;
}

std::vector<long> factor_bases(long K) {
    std::vector<long> b;
    for (long p = 2; p * p <= K; ++p)
        while (K % p == 0) {
            b.push_back(p);
            K /= p;
        }
    if (K > 1) b.push_back(K);
    return b;
}

int cmd_oracle_clopen(const Options& o) {
    if (o.K < 2) throw CLI::ValidationError("--K", "must be at least 2");
    System sys = System::odometer(factor_bases(o.K));
    std::mt19937_64 rng(o.seed);
    long agree = 0;
    for (long t = 0; t < o.trials; ++t) {
        CylSet A(sys.K()), B(sys.K());
        std::uniform_int_distribution<long> pick(0, 2);
        for (std::int64_t i = 0; i < sys.K(); ++i) {
            long r = pick(rng);
            if (r == 0) A.set(i);
            if (r == 1) B.set(i);
        }
        if (A.count() >= B.count()) std::swap(A, B);
        if (A.count() == B.count()) {
            auto a = A.indices();
            std::int64_t i = a.empty() ? 0 : a.front();
            A.set(i, false);
            B.set(i);
        }
        bool brute = clopen_feasible_bruteforce(A, B);
        bool built = false;
        try {
            auto w = clopen_comparison(sys, A, B);
            built = verify_witness(sys, A, B, w).ok();
        } catch (const Error&) {
        }
        if (brute == built) ++agree;
    }
    std::cout << "clopen " << agree << "/" << o.trials << " agreement\n";
    return agree == o.trials ? 0 : kVerifyFailed;
}

int cmd_oracle_birkhoff(const Options& o) {
    SpecFile s = load(o);
    auto cert = certificate_of(o, s);
    if (o.samples < 1) throw CLI::ValidationError("--samples", "must be positive");
    double th = s.system.theta().approx();
    double best = 1e300;
    for (long i = 0; i < o.samples; ++i) {
        double x = (static_cast<double>(i) + 0.5) / static_cast<double>(o.samples);
        double sum = 0.0;
        for (long j = 0; j < cert.N0; ++j) {
            double y = x + static_cast<double>(j) * th;
            sum += cert.g.approx(y - std::floor(y));
        }
        best = std::min(best, sum / static_cast<double>(cert.N0));
    }
    double sigma = cert.sigma.approx(), m0 = cert.m0.approx();
    bool ok = best >= sigma - 1e-9 && best >= m0 - 1e-9;
    std::cout << "N0 " << cert.N0 << " sampled min " << best << " exact min " << m0 << " sigma " << sigma << "\n";
    std::cout << (ok ? "agree" : "disagree") << "\n";
    return ok ? 0 : kVerifyFailed;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::GapNonpositive: return kGap;
        case ErrorKind::ParseError: return kUsage;
        default: return 10 + static_cast<int>(e.kind());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Rokhlin towers, small boundaries and dynamic comparison witnesses"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", o.spec, "Input spec file");
        sub->add_option("--out", o.out, "Output file");
        sub->add_option("--epsilon", o.epsilon, "Epsilon as p/q (thincover: build a leftover cover)");
        sub->add_option("--sigma-fraction", o.sigma_fraction, "Fraction of the integral used as sigma");
        sub->add_option("--depth", o.depth, "Shift search depth");
        sub->add_option("--seed", o.seed, "Random seed");
    };
    auto base_opts = [&](CLI::App* sub) {
        sub->add_option("--base", o.base, "Base arc endpoints (scalars or 'theta')")->expected(2);
        sub->add_option("--base-region", o.base_region, "Named base region");
    };

    auto* tower = app.add_subcommand("tower", "Rokhlin tower over a base");
    common(tower);
    base_opts(tower);
    auto* refine = app.add_subcommand("refine", "Tower refined by a partition");
    common(refine);
    base_opts(refine);
    refine->add_option("--partition", o.partition, "Region names forming the partition")->required();
    auto* compare = app.add_subcommand("compare", "Dynamic comparison witness for C and U");
    common(compare);
    compare->add_option("--C", o.c_name, "Name of the region C");
    compare->add_option("--U", o.u_name, "Name of the region U");
    auto* clopen = app.add_subcommand("clopen-compare", "Clopen comparison on an odometer");
    common(clopen);
    clopen->add_option("--A", o.a_name, "Name of the region A");
    clopen->add_option("--B", o.b_name, "Name of the region B");
    auto* verify = app.add_subcommand("verify", "Re-verify a witness certificate");
    common(verify);
    verify->add_option("--cert", o.cert, "Certificate file");
    verify->add_option("--C", o.c_name, "Name of the region C");
    verify->add_option("--U", o.u_name, "Name of the region U");
    auto* birk = app.add_subcommand("birkhoff", "Birkhoff certificate for F and E");
    common(birk);
    birk->add_option("--F", o.f_name, "Name of the closed region F");
    birk->add_option("--E", o.e_name, "Name of the open region E");
    auto* small = app.add_subcommand("smallness", "Smallness constant of a finite set");
    common(small);
    small->add_option("--F", o.f_name, "Name of the finite region");
    auto* thin = app.add_subcommand("thincover", "Thin cover of F into U");
    common(thin);
    thin->add_option("--F", o.f_name, "Name of the finite region");
    thin->add_option("--U", o.u_name, "Name of the open region");

    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-checks");
    oracle->require_subcommand(1);
    auto* o_rt = oracle->add_subcommand("return-times", "Rational-rotation simulation vs exact tower");
    common(o_rt);
    base_opts(o_rt);
    o_rt->add_option("--q", o.q, "Denominator of the rational approximation");
    auto* o_cl = oracle->add_subcommand("clopen", "Exhaustive odometer matching vs clopen comparison");
    common(o_cl);
    o_cl->add_option("--K", o.K, "Number of cylinders");
    o_cl->add_option("--trials", o.trials, "Random pairs");
    auto* o_bk = oracle->add_subcommand("birkhoff", "Float sampling of Birkhoff averages");
    common(o_bk);
    o_bk->add_option("--F", o.f_name, "Name of the closed region F");
    o_bk->add_option("--E", o.e_name, "Name of the open region E");
    o_bk->add_option("--samples", o.samples, "Sample points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*tower) return cmd_tower(o);
        if (*refine) return cmd_refine(o);
        if (*compare) return cmd_compare(o);
        if (*clopen) return cmd_clopen(o);
        if (*verify) return cmd_verify(o);
        if (*birk) return cmd_birkhoff(o);
        if (*small) return cmd_smallness(o);
        if (*thin) return cmd_thincover(o);
        if (*o_rt) return cmd_oracle_return_times(o);
        if (*o_cl) return cmd_oracle_clopen(o);
        if (*o_bk) return cmd_oracle_birkhoff(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 10 + static_cast<int>(ErrorKind::Internal);
    }
    return kUsage;
}
