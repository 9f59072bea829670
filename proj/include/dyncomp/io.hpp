#pragma once

#include "dyncomp/comparison.hpp"
#include "dyncomp/regions.hpp"
#include "dyncomp/systems.hpp"
#include "dyncomp/towers.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dyncomp {

inline constexpr const char* kToolVersion = "dyncomp 1.0.0";

// Parsed input file. Blocks start with `system <kind>`, `region <name>` or
// `params`; `#` starts a comment.
//
//   system rotation          system torus            system odometer
//   D 5                      theta 5 -1 1 2          bases 2 2 2
//   theta -1 1 2             theta 2 0 1 2           level 3
//
// Region lines (their union is the region):
//   arc [lo, hi)             circle arc, brackets give closedness
//   point x
//   full | empty
//   box [a, b] x (c, d) x *  torus box, `*` is a whole factor
//   cylinders i j ...        odometer cylinder indices at the system level
//   word 101                 cylinder of a digit word (any length <= level)
//
// Scalars are `p`, `p/q` or the triple `a b c` meaning (a + b*sqrt(D))/c.
struct SpecFile {
    System system = System::odometer({2});
    std::map<std::string, Region> regions;
    std::optional<Scalar> epsilon, sigma_fraction;
    std::optional<long> search_depth, bp_cap;

    const Region& region(const std::string& name) const;
};

SpecFile parse_spec(const std::string& text);
SpecFile read_spec(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Scalar in spec-file syntax: `p/q` for rationals, the triple otherwise.
std::string scalar_text(const Scalar& x);
Scalar parse_scalar(const std::string& text, long D);

// Region lines in spec-file syntax, and back.
std::vector<std::string> region_lines(const Region& r);
Region parse_region_lines(const System& sys, const std::vector<std::string>& lines);

// `column k height n_k` followed by the base's region lines, then `kac <sum>`.
std::string format_tower(const RokhlinTower& tower);

std::string sha256_hex(const std::string& data);

// Witness certificate: header (version, system, input hashes, inputs,
// summary), body (entries), footer (verdicts). No timestamps, so identical
// witnesses give identical bytes.
std::string emit_certificate(const System& sys, const ComparisonWitness& w, const VerificationReport& rep);

struct Certificate {
    System system = System::odometer({2});
    ComparisonWitness witness;
    // Verdicts recorded in the footer, in clause order (range, sum, disjoint, contained).
    std::vector<std::pair<std::string, bool>> verdicts;
};

// ParseError on malformed text or when the recorded input hashes disagree
// with the embedded inputs.
Certificate parse_certificate(const std::string& text);

}  // namespace dyncomp
