#include "dyncomp/error.hpp"
#include "dyncomp/regions.hpp"

#include <algorithm>
#include <sstream>

namespace dyncomp {

namespace {

bool less_scalar(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }

std::vector<Scalar> merge_cuts(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    std::vector<Scalar> out;
    std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out), less_scalar);
    out.erase(std::unique(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }),
              out.end());
    return out;
}

// For each element of the axis with cuts `fine`, the element of the axis with
// cuts `coarse` (a subset) that contains it.
std::vector<std::size_t> element_map(const std::vector<Scalar>& fine, const std::vector<Scalar>& coarse) {
    std::size_t n = fine.empty() ? 1 : 2 * fine.size();
    std::vector<std::size_t> out(n, 0);
    if (coarse.empty()) return out;
    std::size_t m = coarse.size();
    std::size_t j = 0;  // number of coarse cuts <= current fine cut
    for (std::size_t i = 0; i < fine.size(); ++i) {
        bool hit = j < m && compare(coarse[j], fine[i]) == 0;
        if (hit) ++j;
        std::size_t g = j == 0 ? m - 1 : j - 1;  // coarse cut at or before fine[i]
        out[2 * i] = hit ? 2 * g : 2 * g + 1;
        out[2 * i + 1] = 2 * g + 1;
    }
    return out;
}

// Element index of coordinate x on an axis with the given cuts.
std::size_t locate(const std::vector<Scalar>& cuts, const Scalar& x) {
    if (cuts.empty()) return 0;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), x, less_scalar);
    if (it == cuts.begin()) return 2 * cuts.size() - 1;
    std::size_t i = static_cast<std::size_t>(it - cuts.begin()) - 1;
    return compare(cuts[i], x) == 0 ? 2 * i : 2 * i + 1;
}

}  // namespace

TorusSet::TorusSet(int d) : d_(d), cuts_(static_cast<std::size_t>(d)), cells_(1, 0) {
    if (d < 1) throw Error(ErrorKind::InvalidInput, "torus dimension must be positive");
}

TorusSet TorusSet::full(int d) {
    TorusSet s(d);
    s.cells_[0] = 1;
    return s;
}

TorusSet TorusSet::box(const std::vector<CircleSet>& factors) {
    TorusSet s(static_cast<int>(factors.size()));
    std::size_t total = 1;
    for (int i = 0; i < s.d_; ++i) {
        s.cuts_[i] = factors[i].boundary_points();
        total *= s.axis_size(i);
    }
    s.cells_.assign(total, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        bool in = true;
        for (int i = 0; i < s.d_ && in; ++i) {
            std::size_t n = s.axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            if (s.cuts_[i].empty())
                in = factors[i].is_full();
            else
                in = e % 2 == 0 ? factors[i].point_in(e / 2) : factors[i].gap_in(e / 2);
        }
        s.cells_[idx] = in ? 1 : 0;
    }
    s.canonicalize();
    return s;
}

bool TorusSet::is_empty() const {
    return std::none_of(cells_.begin(), cells_.end(), [](char c) { return c != 0; });
}

bool TorusSet::is_full() const {
    return std::all_of(cells_.begin(), cells_.end(), [](char c) { return c != 0; });
}

bool TorusSet::contains(const std::vector<Scalar>& x) const {
    if (static_cast<int>(x.size()) != d_) throw Error(ErrorKind::InvalidInput, "point dimension mismatch");
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < d_; ++i) {
        idx += locate(cuts_[i], x[i].frac()) * stride;
        stride *= axis_size(i);
    }
    return cells_[idx] != 0;
}

template <class Op>
TorusSet TorusSet::combine(const TorusSet& x, const TorusSet& y, Op op) {
    if (x.d_ != y.d_) throw Error(ErrorKind::MixedAmbient, "torus dimensions differ");
    TorusSet r(x.d_);
    std::vector<std::vector<std::size_t>> mx(x.d_), my(x.d_);
    std::size_t total = 1;
    for (int i = 0; i < x.d_; ++i) {
        r.cuts_[i] = merge_cuts(x.cuts_[i], y.cuts_[i]);
        mx[i] = element_map(r.cuts_[i], x.cuts_[i]);
        my[i] = element_map(r.cuts_[i], y.cuts_[i]);
        total *= r.axis_size(i);
    }
    r.cells_.assign(total, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx, ix = 0, iy = 0, sx = 1, sy = 1;
        for (int i = 0; i < x.d_; ++i) {
            std::size_t n = r.axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            ix += mx[i][e] * sx;
            iy += my[i][e] * sy;
            sx *= x.axis_size(i);
            sy *= y.axis_size(i);
        }
        r.cells_[idx] = op(x.cells_[ix] != 0, y.cells_[iy] != 0) ? 1 : 0;
    }
    r.canonicalize();
    return r;
}

void TorusSet::canonicalize() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < d_ && !changed; ++a) {
            std::size_t m = cuts_[a].size();
            if (m == 0) continue;
            std::size_t n = 2 * m, stride = 1, total = cells_.size();
            for (int i = 0; i < a; ++i) stride *= axis_size(i);
            for (std::size_t c = 0; c < m && !changed; ++c) {
                std::size_t ep = 2 * c, eg = 2 * c + 1, eb = (2 * c + n - 1) % n;
                bool redundant = true;
                for (std::size_t idx = 0; idx < total && redundant; ++idx) {
                    if ((idx / stride) % n != eb) continue;
                    std::size_t base = idx - eb * stride;
                    char v = cells_[idx];
                    redundant = cells_[base + ep * stride] == v && cells_[base + eg * stride] == v;
                }
                if (!redundant) continue;
                std::vector<char> nc;
                nc.reserve(total / n * (n > 2 ? n - 2 : 1));
                for (std::size_t idx = 0; idx < total; ++idx) {
                    std::size_t e = (idx / stride) % n;
                    if (n == 2 ? e == 0 : (e == ep || e == eg)) continue;
                    nc.push_back(cells_[idx]);
                }
                cells_ = std::move(nc);
                cuts_[a].erase(cuts_[a].begin() + static_cast<long>(c));
                changed = true;
            }
        }
    }
}

TorusSet TorusSet::unite(const TorusSet& o) const { return combine(*this, o, [](bool a, bool b) { return a || b; }); }
TorusSet TorusSet::intersect(const TorusSet& o) const {
    return combine(*this, o, [](bool a, bool b) { return a && b; });
}
TorusSet TorusSet::minus(const TorusSet& o) const { return combine(*this, o, [](bool a, bool b) { return a && !b; }); }

TorusSet TorusSet::complement() const {
    TorusSet r = *this;
    for (auto& c : r.cells_) c = !c;
    return r;
}

TorusSet TorusSet::closure() const {
    TorusSet r = *this;
    std::size_t total = cells_.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (cells_[idx]) continue;
        // Enumerate neighbouring cells: a point element touches its two gaps.
        std::vector<std::vector<std::size_t>> nb(d_);
        std::size_t rest = idx;
        for (int i = 0; i < d_; ++i) {
            std::size_t n = axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            nb[i].push_back(e);
            if (!cuts_[i].empty() && e % 2 == 0) {
                nb[i].push_back(e + 1);
                std::size_t before = (e + n - 1) % n;
                if (before != e + 1) nb[i].push_back(before);
            }
        }
        std::vector<std::size_t> pos(d_, 0);
        bool hit = false;
        while (!hit) {
            std::size_t j = 0, stride = 1;
            for (int i = 0; i < d_; ++i) {
                j += nb[i][pos[i]] * stride;
                stride *= axis_size(i);
            }
            hit = cells_[j] != 0;
            int i = 0;
            while (i < d_ && ++pos[i] == nb[i].size()) pos[i++] = 0;
            if (i == d_) break;
        }
        r.cells_[idx] = hit ? 1 : 0;
    }
    r.canonicalize();
    return r;
}

TorusSet TorusSet::interior() const { return complement().closure().complement(); }
TorusSet TorusSet::boundary() const { return closure().minus(interior()); }
bool TorusSet::subset_of(const TorusSet& o) const { return minus(o).is_empty(); }
bool TorusSet::disjoint(const TorusSet& o) const { return intersect(o).is_empty(); }

Scalar TorusSet::measure() const {
    Scalar total(0);
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        if (!cells_[idx]) continue;
        std::size_t rest = idx;
        Scalar vol(1);
        for (int i = 0; i < d_ && !vol.is_zero(); ++i) {
            std::size_t n = axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            const auto& c = cuts_[i];
            if (c.empty()) continue;
            if (e % 2 == 0) {
                vol = Scalar(0);
                break;
            }
            std::size_t g = e / 2;
            Scalar len = g + 1 < c.size() ? c[g + 1] - c[g] : c[0] + Scalar(1) - c[g];
            vol *= len;
        }
        total += vol;
    }
    return total;
}

double TorusSet::measure_approx() const {
    double total = 0;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        if (!cells_[idx]) continue;
        std::size_t rest = idx;
        double vol = 1;
        for (int i = 0; i < d_; ++i) {
            std::size_t n = axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            const auto& c = cuts_[i];
            if (c.empty()) continue;
            if (e % 2 == 0) {
                vol = 0;
                break;
            }
            std::size_t g = e / 2;
            vol *= g + 1 < c.size() ? c[g + 1].approx() - c[g].approx() : c[0].approx() + 1 - c[g].approx();
        }
        total += vol;
    }
    return total;
}

TorusSet TorusSet::translate(const std::vector<Scalar>& shift) const {
    if (static_cast<int>(shift.size()) != d_) throw Error(ErrorKind::InvalidInput, "shift dimension mismatch");
    TorusSet r = *this;
    std::vector<std::size_t> rot(d_, 0);
    for (int i = 0; i < d_; ++i) {
        std::size_t m = cuts_[i].size();
        if (m == 0) continue;
        Scalar t = shift[i].frac();
        std::vector<Scalar> np(m);
        std::size_t start = 0;
        for (std::size_t k = 0; k < m; ++k) {
            np[k] = cuts_[i][k] + t;
            if (compare(np[k], Scalar(1)) >= 0) np[k] -= Scalar(1);
            if (k > 0 && compare(np[k], np[k - 1]) < 0) start = k;
        }
        for (std::size_t k = 0; k < m; ++k) r.cuts_[i][k] = np[(start + k) % m];
        rot[i] = 2 * start;
    }
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        std::size_t rest = idx, src = 0, stride = 1;
        for (int i = 0; i < d_; ++i) {
            std::size_t n = axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            src += ((e + rot[i]) % n) * stride;
            stride *= n;
        }
        r.cells_[idx] = cells_[src];
    }
    return r;
}

std::vector<std::vector<CircleSet>> TorusSet::cells() const {
    std::vector<std::vector<CircleSet>> out;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        if (!cells_[idx]) continue;
        std::vector<CircleSet> box;
        std::size_t rest = idx;
        for (int i = 0; i < d_; ++i) {
            std::size_t n = axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            const auto& c = cuts_[i];
            if (c.empty()) {
                box.push_back(CircleSet::full());
            } else if (e % 2 == 0) {
                box.push_back(CircleSet::point(c[e / 2]));
            } else {
                std::size_t g = e / 2;
                box.push_back(CircleSet::open_arc(c[g], g + 1 < c.size() ? c[g + 1] : c[0] + Scalar(1)));
            }
        }
        out.push_back(std::move(box));
    }
    return out;
}

std::string TorusSet::str() const {
    if (is_empty()) return "{}";
    if (is_full()) return "T^" + std::to_string(d_);
    std::ostringstream os;
    bool first = true;
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        if (!cells_[idx]) continue;
        if (!first) os << " u ";
        first = false;
        std::size_t rest = idx;
        for (int i = 0; i < d_; ++i) {
            std::size_t n = axis_size(i);
            std::size_t e = rest % n;
            rest /= n;
            if (i > 0) os << "x";
            const auto& c = cuts_[i];
            if (c.empty()) {
                os << "S1";
            } else if (e % 2 == 0) {
                os << "{" << c[e / 2] << "}";
            } else {
                std::size_t g = e / 2;
                os << "(" << c[g] << ", " << (g + 1 < c.size() ? c[g + 1] : c[0] + Scalar(1)) << ")";
            }
        }
    }
    return os.str();
}

bool operator==(const TorusSet& x, const TorusSet& y) {
    return x.d_ == y.d_ && x.cuts_ == y.cuts_ && x.cells_ == y.cells_;
}

}  // namespace dyncomp
