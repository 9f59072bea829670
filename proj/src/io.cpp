#include "dyncomp/io.hpp"

#include "dyncomp/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dyncomp {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> w;
    for (std::string t; in >> t;) w.push_back(t);
    return w;
}

std::string join(const std::vector<std::string>& w, std::size_t from) {
    std::string s;
    for (std::size_t i = from; i < w.size(); ++i) s += (i > from ? " " : "") + w[i];
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

long parse_long(const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
    }
    if (used != s.size()) throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
    return v;
}

// "[lo, hi)" style interval.
CircleSet parse_interval(const std::string& text, long D) {
    std::string t = trim(text);
    if (t == "*") return CircleSet::full();
    if (t.size() < 5) throw Error(ErrorKind::ParseError, "bad interval '" + text + "'");
    char open = t.front(), close = t.back();
    if ((open != '[' && open != '(') || (close != ']' && close != ')'))
        throw Error(ErrorKind::ParseError, "bad interval '" + text + "'");
    std::string inner = t.substr(1, t.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos)
        throw Error(ErrorKind::ParseError, "bad interval '" + text + "'");
    Scalar lo = parse_scalar(trim(inner.substr(0, comma)), D);
    Scalar hi = parse_scalar(trim(inner.substr(comma + 1)), D);
    return CircleSet::arc(lo, hi, open == '[', close == ']');
}

std::string arc_text(const CircleSet::Arc& a) {
    return std::string(a.lo_closed ? "[" : "(") + scalar_text(a.lo) + ", " + scalar_text(a.hi) +
           (a.hi_closed ? "]" : ")");
}

std::string interval_text(const CircleSet& s) { return s.is_full() ? "*" : arc_text(s.components().at(0)); }

// Cylinder indices of a digit word of length <= level.
std::vector<std::int64_t> word_cylinders(const System& sys, const std::string& word) {
    if (static_cast<long>(word.size()) > sys.level()) throw Error(ErrorKind::ParseError, "word longer than level");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        int digit = word[i] - '0';
        if (word[i] < '0' || word[i] > '9' || digit >= sys.bases()[i])
            throw Error(ErrorKind::ParseError, "bad digit word '" + word + "'");
        idx += digit * sys.K_at(static_cast<long>(i));
    }
    std::vector<std::int64_t> out;
    std::int64_t step = sys.K_at(static_cast<long>(word.size()));
    for (std::int64_t i = idx; i < sys.K(); i += step) out.push_back(i);
    return out;
}

System parse_system(const std::string& kind, const std::vector<std::pair<std::size_t, std::string>>& lines) {
    long D = 0;
    std::vector<std::string> theta_text;
    std::vector<Scalar> thetas;
    std::vector<long> bases;
    long level = -1;
    for (const auto& [no, line] : lines) {
        auto w = words(line);
        const std::string& key = w[0];
        if (kind == "rotation" && key == "D" && w.size() == 2) {
            D = parse_long(w[1]);
        } else if (kind == "rotation" && key == "theta" && w.size() >= 2) {
            theta_text.push_back(join(w, 1));
        } else if (kind == "torus" && key == "theta" && w.size() >= 3) {
            thetas.push_back(parse_scalar(join(w, 2), parse_long(w[1])));
        } else if (kind == "odometer" && key == "bases" && w.size() >= 2) {
            for (std::size_t i = 1; i < w.size(); ++i) bases.push_back(parse_long(w[i]));
        } else if (kind == "odometer" && key == "level" && w.size() == 2) {
            level = parse_long(w[1]);
        } else {
            fail(no, "unknown key '" + key + "' in system block");
        }
    }
    if (kind == "rotation") {
        if (theta_text.size() != 1) throw Error(ErrorKind::ParseError, "rotation needs exactly one theta");
        return System::rotation(parse_scalar(theta_text[0], D));
    }
    if (kind == "torus") return System::torus(thetas);
    if (kind == "odometer") return System::odometer(bases, level);
    throw Error(ErrorKind::ParseError, "unknown system kind '" + kind + "'");
}

struct Block {
    std::string head;  // "system", "region", "params"
    std::string arg;
    std::size_t line = 0;
    std::vector<std::pair<std::size_t, std::string>> lines;
};

std::vector<Block> split_blocks(const std::string& text, const std::vector<std::string>& heads) {
    std::vector<Block> blocks;
    std::istringstream in(text);
    std::size_t no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        auto w = words(line);
        if (std::find(heads.begin(), heads.end(), w[0]) != heads.end()) {
            blocks.push_back({w[0], join(w, 1), no, {}});
            continue;
        }
        if (blocks.empty()) fail(no, "content before the first block");
        blocks.back().lines.emplace_back(no, line);
    }
    return blocks;
}

std::string digest_text(const EVP_MD* md, const std::string& data) {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, md, nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, out, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error(ErrorKind::Internal, "sha256 failed");
    }
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(out[i]);
    return os.str();
}

std::string region_text(const Region& r) {
    std::string s;
    for (const auto& l : region_lines(r)) s += l + "\n";
    return s;
}

}  // namespace

const Region& SpecFile::region(const std::string& name) const {
    auto it = regions.find(name);
    if (it == regions.end()) throw Error(ErrorKind::ParseError, "spec has no region '" + name + "'");
    return it->second;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << text;
}

std::string scalar_text(const Scalar& x) { return x.is_rational() ? x.str() : x.triple(); }

Scalar parse_scalar(const std::string& text, long D) {
    try {
        return Scalar::parse(text, D);
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::vector<std::string> region_lines(const Region& r) {
    std::vector<std::string> out;
    switch (r.kind()) {
        case AmbientKind::Circle: {
            const auto& s = r.circle();
            if (s.is_empty()) return {"empty"};
            if (s.is_full()) return {"full"};
            for (const auto& a : s.components()) {
                if (a.lo == a.hi)
                    out.push_back("point " + scalar_text(a.lo));
                else
                    out.push_back("arc " + arc_text(a));
            }
            return out;
        }
        case AmbientKind::Torus: {
            const auto& t = r.torus();
            if (t.is_empty()) return {"empty"};
            if (t.is_full()) return {"full"};
            for (const auto& cell : t.cells()) {
                std::string line = "box";
                for (std::size_t i = 0; i < cell.size(); ++i) line += (i ? " x " : " ") + interval_text(cell[i]);
                out.push_back(line);
            }
            return out;
        }
        case AmbientKind::Cylinders: {
            const auto& c = r.cyl();
            if (c.is_empty()) return {"empty"};
            std::string line = "cylinders";
            for (auto i : c.indices()) line += " " + std::to_string(i);
            return {line};
        }
    }
    return out;
}

Region parse_region_lines(const System& sys, const std::vector<std::string>& lines) {
    if (sys.is_rotation()) {
        std::vector<CircleSet> parts;
        for (const auto& line : lines) {
            auto w = words(line);
            if (w.empty()) continue;
            if (w[0] == "arc" && w.size() >= 2)
                parts.push_back(parse_interval(join(w, 1), sys.D()));
            else if (w[0] == "point" && w.size() >= 2)
                parts.push_back(CircleSet::point(parse_scalar(join(w, 1), sys.D())));
            else if (w[0] == "full" && w.size() == 1)
                parts.push_back(CircleSet::full());
            else if (w[0] == "empty" && w.size() == 1)
                continue;
            else
                throw Error(ErrorKind::ParseError, "bad circle region line '" + line + "'");
        }
        return unite_all(std::move(parts));
    }
    if (sys.is_torus()) {
        TorusSet acc(sys.dim());
        for (const auto& line : lines) {
            auto w = words(line);
            if (w.empty()) continue;
            if (w[0] == "full" && w.size() == 1) {
                acc = TorusSet::full(sys.dim());
            } else if (w[0] == "empty" && w.size() == 1) {
                continue;
            } else if (w[0] == "box") {
                std::string rest = trim(line.substr(line.find("box") + 3));
                std::vector<CircleSet> factors;
                std::size_t start = 0;
                for (;;) {
                    auto x = rest.find('x', start);
                    std::string part = rest.substr(start, x == std::string::npos ? std::string::npos : x - start);
                    long D = factors.size() < sys.thetas().size() ? sys.thetas()[factors.size()].D() : 0;
                    factors.push_back(parse_interval(part, D));
                    if (x == std::string::npos) break;
                    start = x + 1;
                }
                if (static_cast<int>(factors.size()) != sys.dim())
                    throw Error(ErrorKind::ParseError, "box has the wrong number of factors");
                acc = acc.unite(TorusSet::box(factors));
            } else {
                throw Error(ErrorKind::ParseError, "bad torus region line '" + line + "'");
            }
        }
        return acc;
    }
    CylSet acc(sys.K());
    for (const auto& line : lines) {
        auto w = words(line);
        if (w.empty()) continue;
        if (w[0] == "full" && w.size() == 1) {
            acc = CylSet::full(sys.K());
        } else if (w[0] == "empty" && w.size() == 1) {
            continue;
        } else if (w[0] == "cylinders") {
            for (std::size_t i = 1; i < w.size(); ++i) {
                long v = parse_long(w[i]);
                if (v < 0 || v >= sys.K()) throw Error(ErrorKind::ParseError, "cylinder index out of range");
                acc.set(v);
            }
        } else if (w[0] == "word" && w.size() == 2) {
            for (auto i : word_cylinders(sys, w[1])) acc.set(i);
        } else {
            throw Error(ErrorKind::ParseError, "bad odometer region line '" + line + "'");
        }
    }
    return acc;
}

SpecFile parse_spec(const std::string& text) {
    auto blocks = split_blocks(text, {"system", "region", "params"});
    SpecFile spec;
    const Block* sys_block = nullptr;
    for (const auto& b : blocks) {
        if (b.head != "system") continue;
        if (sys_block != nullptr) fail(b.line, "second system block");
        sys_block = &b;
    }
    if (sys_block == nullptr) throw Error(ErrorKind::ParseError, "missing system block");
    try {
        spec.system = parse_system(sys_block->arg, sys_block->lines);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        throw Error(ErrorKind::ParseError, std::string("system block: ") + e.what());
    }
    long D = spec.system.D();
    for (const auto& b : blocks) {
        if (b.head == "region") {
            if (words(b.arg).size() != 1) fail(b.line, "region needs one name");
            if (spec.regions.count(b.arg)) fail(b.line, "duplicate region '" + b.arg + "'");
            std::vector<std::string> lines;
            for (const auto& l : b.lines) lines.push_back(l.second);
            try {
                spec.regions[b.arg] = parse_region_lines(spec.system, lines);
            } catch (const Error& e) {
                fail(b.line, std::string("region ") + b.arg + ": " + e.what());
            }
        } else if (b.head == "params") {
            for (const auto& [no, line] : b.lines) {
                auto w = words(line);
                if (w.size() < 2) fail(no, "missing value");
                std::string value = join(w, 1);
                if (w[0] == "epsilon")
                    spec.epsilon = parse_scalar(value, D);
                else if (w[0] == "sigma_fraction")
                    spec.sigma_fraction = parse_scalar(value, D);
                else if (w[0] == "search_depth")
                    spec.search_depth = parse_long(value);
                else if (w[0] == "bp_cap")
                    spec.bp_cap = parse_long(value);
                else
                    fail(no, "unknown key '" + w[0] + "' in params block");
            }
        }
    }
    return spec;
}

SpecFile read_spec(const std::string& path) { return parse_spec(read_file(path)); }

std::string format_tower(const RokhlinTower& tower) {
    std::ostringstream os;
    for (std::size_t k = 0; k < tower.columns.size(); ++k) {
        const auto& c = tower.columns[k];
        os << "column " << k << " height " << c.height << (c.empty_interior ? " empty-interior" : "") << "\n";
        for (const auto& l : region_lines(c.base)) os << "  " << l << "\n";
    }
    // Always p/q so the identity reads `kac 1/1`.
    Scalar k = kac_sum(tower);
    if (k.is_rational())
        os << "kac " << k.a().get_str() << "/" << k.c().get_str() << "\n";
    else
        os << "kac " << scalar_text(k) << "\n";
    return os.str();
}

std::string sha256_hex(const std::string& data) { return digest_text(EVP_sha256(), data); }

std::string emit_certificate(const System& sys, const ComparisonWitness& w, const VerificationReport& rep) {
    std::string out;
    out.reserve(64 * w.size() + 1024);
    std::string echo = sys.echo();
    std::string ctext = region_text(w.C), utext = region_text(w.U);
    out += "dyncomp-certificate\n";
    out += std::string("version ") + kToolVersion + "\n";
    out += "begin system\n" + echo + "end system\n";
    out += "hash system " + sha256_hex(echo) + "\n";
    out += "hash C " + sha256_hex(ctext) + "\n";
    out += "hash U " + sha256_hex(utext) + "\n";
    out += "begin region C\n" + ctext + "end region\n";
    out += "begin region U\n" + utext + "end region\n";
    const auto& s = w.summary;
    out += "summary N0 " + std::to_string(s.N0) + "\n";
    out += "summary N1 " + std::to_string(s.N1) + "\n";
    out += "summary tower_N " + std::to_string(s.tower_N) + "\n";
    out += "summary sigma " + scalar_text(s.sigma) + "\n";
    out += "summary heights";
    for (long h : s.heights) out += " " + std::to_string(h);
    out += "\nsummary leftover_points " + std::to_string(s.leftover_points) + "\n";
    out += "summary attempts " + std::to_string(s.attempts) + "\n";
    out += "entries " + std::to_string(w.size()) + "\n";
    for (std::size_t j = 0; j < w.size(); ++j) {
        out += "shift " + std::to_string(w.d[j]) + "\n";
        if (w.kind == AmbientKind::Cylinders) {
            out += "cyl";
            for (auto i : w.cyl[j].indices()) out += " " + std::to_string(i);
            out += "\n";
        } else {
            for (const auto& bp : w.f[j].breakpoints()) out += "bp " + bp.x.triple() + " " + bp.v.triple() + "\n";
        }
    }
    auto verdict = [&](const char* name, bool v) { out += std::string("verdict ") + name + (v ? " pass\n" : " fail\n"); };
    verdict("range", rep.range);
    verdict("sum_on_C", rep.sum_on_C);
    verdict("disjoint", rep.disjoint);
    verdict("contained", rep.contained);
    out += "end\n";
    return out;
}

Certificate parse_certificate(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::size_t i = 0;
    auto next = [&]() -> const std::string& {
        if (i >= lines.size()) throw Error(ErrorKind::ParseError, "certificate ends early");
        return lines[i++];
    };
    auto expect = [&](const std::string& want) {
        if (next() != want) fail(i, "expected '" + want + "'");
    };
    auto block = [&](const std::string& end) {
        std::string body;
        std::vector<std::string> got;
        for (;;) {
            const std::string& l = next();
            if (l == end) break;
            body += l + "\n";
            got.push_back(l);
        }
        return std::make_pair(body, got);
    };
    auto keyed = [&](const std::string& prefix) {
        const std::string& l = next();
        if (l.rfind(prefix, 0) != 0) fail(i, "expected '" + prefix + "'");
        return l.substr(prefix.size());
    };

    Certificate cert;
    expect("dyncomp-certificate");
    keyed("version ");
    expect("begin system");
    auto [echo, echo_lines] = block("end system");
    auto sys_blocks = split_blocks(echo, {"system"});
    if (sys_blocks.size() != 1) throw Error(ErrorKind::ParseError, "bad system block");
    cert.system = parse_system(sys_blocks[0].arg, sys_blocks[0].lines);
    if (cert.system.echo() != echo) throw Error(ErrorKind::ParseError, "system block is not canonical");
    std::string h_sys = keyed("hash system "), h_c = keyed("hash C "), h_u = keyed("hash U ");
    expect("begin region C");
    auto [ctext, clines] = block("end region");
    expect("begin region U");
    auto [utext, ulines] = block("end region");
    if (sha256_hex(echo) != h_sys || sha256_hex(ctext) != h_c || sha256_hex(utext) != h_u)
        throw Error(ErrorKind::ParseError, "input hash mismatch");

    auto& w = cert.witness;
    w.C = parse_region_lines(cert.system, clines);
    w.U = parse_region_lines(cert.system, ulines);
    if (region_text(w.C) != ctext || region_text(w.U) != utext)
        throw Error(ErrorKind::ParseError, "input regions are not canonical");
    w.kind = cert.system.is_odometer() ? AmbientKind::Cylinders : AmbientKind::Circle;
    long D = cert.system.D();

    auto& s = w.summary;
    s.N0 = parse_long(keyed("summary N0 "));
    s.N1 = parse_long(keyed("summary N1 "));
    s.tower_N = parse_long(keyed("summary tower_N "));
    s.sigma = parse_scalar(keyed("summary sigma "), D);
    for (const auto& h : words(keyed("summary heights"))) s.heights.push_back(parse_long(h));
    s.leftover_points = parse_long(keyed("summary leftover_points "));
    s.attempts = parse_long(keyed("summary attempts "));
    long n = parse_long(keyed("entries "));
    if (n < 0) throw Error(ErrorKind::ParseError, "negative entry count");

    for (long j = 0; j < n; ++j) {
        w.d.push_back(parse_long(keyed("shift ")));
        if (w.kind == AmbientKind::Cylinders) {
            CylSet c(cert.system.K());
            for (const auto& t : words(keyed("cyl"))) {
                long v = parse_long(t);
                if (v < 0 || v >= cert.system.K()) throw Error(ErrorKind::ParseError, "cylinder index out of range");
                c.set(v);
            }
            w.cyl.push_back(std::move(c));
            continue;
        }
        std::vector<Breakpoint> bps;
        while (i < lines.size() && lines[i].rfind("bp ", 0) == 0) {
            auto t = words(lines[i++]);
            if (t.size() != 7) fail(i, "bp needs six integers");
            try {
                bps.push_back({Scalar::quad(mpz_class(t[1]), mpz_class(t[2]), mpz_class(t[3]), D),
                               Scalar::quad(mpz_class(t[4]), mpz_class(t[5]), mpz_class(t[6]), D)});
            } catch (const std::invalid_argument&) {
                fail(i, "bad integer in bp line");
            } catch (const Error& e) {
                fail(i, e.what());
            }
        }
        if (bps.empty()) fail(i, "entry without breakpoints");
        try {
            w.f.push_back(PLFunction::from_breakpoints(std::move(bps)));
        } catch (const Error& e) {
            fail(i, e.what());
        }
    }
    for (const char* name : {"range", "sum_on_C", "disjoint", "contained"}) {
        auto t = words(keyed("verdict "));
        if (t.size() != 2 || t[0] != name || (t[1] != "pass" && t[1] != "fail")) fail(i, "bad verdict line");
        cert.verdicts.emplace_back(name, t[1] == "pass");
    }
    expect("end");
    if (i != lines.size()) fail(i + 1, "trailing content");
    return cert;
}

}  // namespace dyncomp
