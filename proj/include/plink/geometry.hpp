// Exact rational PL maps into R^d: transversal intersection counts, linking
// numbers via generic cones, convex-cell disjointness, and seeded random maps.
//
// Ambient orientation is the standard basis orientation of R^d, fixed once.
// The sign of a transversal crossing of oriented cells s (dim a) and t
// (dim b), a+b = d, is the sign of det[frame(s) | frame(t)] where frame(w0,
// ...,wm) has columns wi - w0 in order.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plink/linalg.hpp"
#include "plink/rational.hpp"
#include "plink/simplicial.hpp"

namespace plink {

// A geometric cell: dim+1 points with an orientation sign.
struct GeomCell {
    std::vector<Point> pts;
    int sign = 1;
};

using EdgeKey = std::pair<Vertex, Vertex>;  // sorted

inline EdgeKey edge_key(Vertex a, Vertex b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

// Cone filling of a 2-cell: fan from `apex` over the closed boundary cycle
// `cycle` (node ids, first == last not required; closure implied). The cycle
// traverses the boundary in the orientation of the ascending vertex order of
// the face. The apex may be one of the corner nodes.
struct Fill2 {
    int apex = 0;
    std::vector<int> cycle;
};

class PLMap {
  public:
    Complex source;
    int dim = 3;
    std::map<int, Point> coords;                 // node id -> point
    std::map<EdgeKey, std::vector<int>> polylines;  // subdivided edges only
    std::map<Face, Fill2> fills;                 // subdivided 2-cells only

    int fresh_node() { return next_node_++; }
    void reserve_node_ids(int above) { next_node_ = std::max(next_node_, above + 1); }

    const Point& point(int node) const {
        auto it = coords.find(node);
        if (it == coords.end())
            throw std::invalid_argument("missing coordinates for node " + std::to_string(node));
        if (static_cast<int>(it->second.size()) != dim)
            throw std::invalid_argument("coordinate dimension mismatch");
        return it->second;
    }

    // Node chain of an edge from a to b (inclusive of endpoints).
    std::vector<int> edge_chain(Vertex a, Vertex b) const {
        auto key = edge_key(a, b);
        auto it = polylines.find(key);
        std::vector<int> chain;
        if (it == polylines.end())
            chain = {key.first, key.second};
        else
            chain = it->second;
        if (a != key.first) std::reverse(chain.begin(), chain.end());
        return chain;
    }

    // Geometric cells of a face, oriented consistently with the ascending
    // vertex order of the face.
    std::vector<GeomCell> cells_of_face(const Face& f) const {
        std::vector<GeomCell> out;
        if (f.size() == 1) {
            out.push_back({{point(f[0])}, 1});
            return out;
        }
        if (f.size() == 2) {
            auto chain = edge_chain(f[0], f[1]);
            for (size_t i = 0; i + 1 < chain.size(); ++i)
                out.push_back({{point(chain[i]), point(chain[i + 1])}, 1});
            return out;
        }
        if (f.size() == 3) {
            auto it = fills.find(f);
            if (it == fills.end()) {
                out.push_back({{point(f[0]), point(f[1]), point(f[2])}, 1});
                return out;
            }
            const Fill2& fill = it->second;
            const Point& apex = point(fill.apex);
            const auto& cyc = fill.cycle;
            for (size_t i = 0; i < cyc.size(); ++i) {
                int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
                if (u == fill.apex || v == fill.apex) continue;
                out.push_back({{apex, point(u), point(v)}, 1});
            }
            return out;
        }
        // Higher-dimensional faces are always straight.
        GeomCell c;
        for (Vertex v : f) c.pts.push_back(point(v));
        c.sign = 1;
        out.push_back(std::move(c));
        return out;
    }

    std::string digest_string() const {
        std::ostringstream os;
        os << dim << ";";
        for (const auto& [id, p] : coords) {
            os << id << ":";
            for (const auto& c : p) os << rational_to_string(c) << ",";
        }
        for (const auto& [k, chain] : polylines) {
            os << "e" << k.first << "-" << k.second << ":";
            for (int n : chain) os << n << ",";
        }
        for (const auto& [f, fill] : fills) {
            os << "f" << face_to_string(f) << ":" << fill.apex << ":";
            for (int n : fill.cycle) os << n << ",";
        }
        return os.str();
    }

    std::uint64_t hash() const { return fnv1a(digest_string()); }

  private:
    int next_node_ = 1000000;
};

// ---------------------------------------------------------------------------
// Exact intersection primitives

struct IntersectionResult {
    int count = 0;        // 0 or +-1 (signed) / 1 (mod2 callers take abs)
    bool degenerate = false;
    std::string reason;
    std::optional<Point> point;
};

// Transversal intersection of two straight cells with dim(s) + dim(t) = d.
// Degenerate when the combined frame is singular or the crossing lies on a
// cell boundary; never silently perturbed.
inline IntersectionResult transversal_intersection(const GeomCell& s, const GeomCell& t, int d) {
    const int a = static_cast<int>(s.pts.size()) - 1;
    const int b = static_cast<int>(t.pts.size()) - 1;
    if (a + b != d)
        throw std::invalid_argument("transversal_intersection: dim(s)+dim(t) must equal d");
    IntersectionResult res;
    // Solve s0 + sum si (s_i - s0) = t0 + sum tj (t_j - t0).
    Mat m(d, std::vector<Rational>(d));
    std::vector<Rational> rhs(d);
    for (int r = 0; r < d; ++r) {
        for (int i = 0; i < a; ++i) m[r][i] = s.pts[i + 1][r] - s.pts[0][r];
        for (int j = 0; j < b; ++j) m[r][a + j] = -(t.pts[j + 1][r] - t.pts[0][r]);
        rhs[r] = t.pts[0][r] - s.pts[0][r];
    }
    Rational dd = det(m);
    if (dd == 0) {
        res.degenerate = true;
        res.reason = "affine degeneracy (singular combined frame)";
        return res;
    }
    auto sol = solve_square(m, rhs);
    // barycentric positivity, strictly interior
    Rational sum_s = 0, sum_t = 0;
    bool outside = false, boundary = false;
    for (int i = 0; i < a; ++i) {
        if ((*sol)[i] < 0) outside = true;
        if ((*sol)[i] == 0) boundary = true;
        sum_s += (*sol)[i];
    }
    for (int j = 0; j < b; ++j) {
        if ((*sol)[a + j] < 0) outside = true;
        if ((*sol)[a + j] == 0) boundary = true;
        sum_t += (*sol)[a + j];
    }
    if (sum_s > 1 || sum_t > 1) outside = true;
    if (sum_s == 1 || sum_t == 1) boundary = true;
    if (outside && !boundary) return res;  // clean miss
    if (boundary && !outside) {
        res.degenerate = true;
        res.reason = "crossing on a cell boundary";
        return res;
    }
    if (outside) return res;  // outside, boundary coincidences irrelevant
    // interior crossing; sign of det[frame(s) | frame(t)]
    Mat fr(d, std::vector<Rational>(d));
    for (int r = 0; r < d; ++r) {
        for (int i = 0; i < a; ++i) fr[r][i] = s.pts[i + 1][r] - s.pts[0][r];
        for (int j = 0; j < b; ++j) fr[r][a + j] = t.pts[j + 1][r] - t.pts[0][r];
    }
    Rational dv = det(fr);
    res.count = (dv > 0 ? 1 : -1) * s.sign * t.sign;
    Point p = s.pts[0];
    for (int i = 0; i < a; ++i) p = add(p, scale((*sol)[i], sub(s.pts[i + 1], s.pts[0])));
    res.point = p;
    return res;
}

// Do two straight closed cells intersect? Exact, total (no general position
// needed). Returns a common point when they do.
inline std::optional<Point> cells_common_point(const GeomCell& s, const GeomCell& t, int d) {
    const size_t ns = s.pts.size(), nt = t.pts.size();
    // quick bounding-box reject
    for (int r = 0; r < d; ++r) {
        Rational lo_s = s.pts[0][r], hi_s = s.pts[0][r];
        for (const auto& p : s.pts) {
            if (p[r] < lo_s) lo_s = p[r];
            if (p[r] > hi_s) hi_s = p[r];
        }
        Rational lo_t = t.pts[0][r], hi_t = t.pts[0][r];
        for (const auto& p : t.pts) {
            if (p[r] < lo_t) lo_t = p[r];
            if (p[r] > hi_t) hi_t = p[r];
        }
        if (hi_s < lo_t || hi_t < lo_s) return std::nullopt;
    }
    // LP: sum li s_i = sum mj t_j, sum li = 1, sum mj = 1, l,m >= 0
    Mat a(d + 2, std::vector<Rational>(ns + nt, Rational(0)));
    std::vector<Rational> b(d + 2, Rational(0));
    for (int r = 0; r < d; ++r) {
        for (size_t i = 0; i < ns; ++i) a[r][i] = s.pts[i][r];
        for (size_t j = 0; j < nt; ++j) a[r][ns + j] = -t.pts[j][r];
    }
    for (size_t i = 0; i < ns; ++i) a[d][i] = 1;
    b[d] = 1;
    for (size_t j = 0; j < nt; ++j) a[d + 1][ns + j] = 1;
    b[d + 1] = 1;
    auto x = lp_feasible(std::move(a), std::move(b));
    if (!x) return std::nullopt;
    Point p(d, Rational(0));
    for (size_t i = 0; i < ns; ++i) p = add(p, scale((*x)[i], s.pts[i]));
    return p;
}

// ---------------------------------------------------------------------------
// General position reporting

struct GPViolation {
    Face a, b;
    std::string predicate;
};

struct GeneralPositionReport {
    std::vector<GPViolation> violations;
    bool ok() const { return violations.empty(); }
};

class degeneracy_error : public std::runtime_error {
  public:
    explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

// Signed or mod-2 count of f(s) n f(t) for disjoint faces with
// dim s + dim t = d. Throws degeneracy_error instead of perturbing.
enum class CountMode { Signed, Mod2 };

inline int pair_intersection_number(const PLMap& f, const OrientedSimplex& s,
                                    const OrientedSimplex& t, CountMode mode) {
    Face fs = s.support(), ft = t.support();
    if (!faces_disjoint(fs, ft))
        throw std::invalid_argument("pair_intersection_number: faces not disjoint");
    int ds = static_cast<int>(fs.size()) - 1, dt = static_cast<int>(ft.size()) - 1;
    if (ds + dt != f.dim)
        throw std::invalid_argument("pair_intersection_number: dim s + dim t != d");
    int sign_s = perm_sign_to_sorted(s.seq) * s.sign;
    int sign_t = perm_sign_to_sorted(t.seq) * t.sign;
    long long total = 0;
    for (const auto& cs : f.cells_of_face(fs))
        for (const auto& ct : f.cells_of_face(ft)) {
            auto r = transversal_intersection(cs, ct, f.dim);
            if (r.degenerate)
                throw degeneracy_error("degenerate configuration on " + face_to_string(fs) +
                                       " x " + face_to_string(ft) + ": " + r.reason);
            total += r.count;
        }
    total *= sign_s * sign_t;
    if (mode == CountMode::Mod2) return static_cast<int>(((total % 2) + 2) % 2);
    return static_cast<int>(total);
}

// ---------------------------------------------------------------------------
// Almost-embedding check

struct AEWitness {
    Face a, b;
    Point point;
};

// ok iff images of every pair of disjoint faces are disjoint (exact test over
// all subdivision-cell pairs).
inline std::optional<AEWitness> almost_embedding_check(const PLMap& f) {
    const auto& faces = f.source.faces();
    std::vector<Face> all(faces.begin(), faces.end());
    // cache cells per face
    std::map<Face, std::vector<GeomCell>> cells;
    for (const auto& fc : all) cells[fc] = f.cells_of_face(fc);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            if (!faces_disjoint(all[i], all[j])) continue;
            for (const auto& ca : cells[all[i]])
                for (const auto& cb : cells[all[j]]) {
                    auto p = cells_common_point(ca, cb, f.dim);
                    if (p) return AEWitness{all[i], all[j], *p};
                }
        }
    return std::nullopt;
}

// Segments sharing an endpoint: do they overlap beyond it? (collinear with
// positively aligned directions)
inline bool segments_overlap_at_shared(const Point& shared, const Point& x, const Point& y) {
    Point u = sub(x, shared), v = sub(y, shared);
    // collinear?
    Mat m;
    m.push_back(u);
    m.push_back(v);
    if (rank(m) > 1) return false;
    // positively aligned?
    Rational dot = 0;
    for (size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    return dot > 0;
}

struct LocalInjectivityIssue {
    std::string what;
};

// Edge-level injectivity for graph-like sources: each polyline is simple and
// adjacent edges meet only at the image of the shared vertex. Together with
// almost_embedding_check this certifies an embedding for complexes whose
// positive-dimensional faces are edges.
inline std::optional<LocalInjectivityIssue> local_injectivity_check(const PLMap& f) {
    std::vector<Face> edges = f.source.faces_of_dim(1);
    // vertex images distinct is covered by almost_embedding_check (vertices
    // are disjoint faces); here: polyline simplicity + adjacent edge pairs.
    auto segs = [&](const Face& e) { return f.cells_of_face(e); };
    for (const auto& e : edges) {
        auto chain = f.edge_chain(e[0], e[1]);
        std::set<int> seen(chain.begin(), chain.end());
        if (seen.size() != chain.size())
            return LocalInjectivityIssue{"edge " + face_to_string(e) + " repeats a node"};
        auto cs = segs(e);
        for (size_t i = 0; i < cs.size(); ++i) {
            // segment must be nondegenerate
            if (cs[i].pts[0] == cs[i].pts[1])
                return LocalInjectivityIssue{"edge " + face_to_string(e) + " has a zero segment"};
            for (size_t j = i + 1; j < cs.size(); ++j) {
                if (j == i + 1) {
                    if (segments_overlap_at_shared(cs[j].pts[0], cs[i].pts[0], cs[j].pts[1]))
                        return LocalInjectivityIssue{"edge " + face_to_string(e) +
                                                     " folds back on itself"};
                    continue;
                }
                if (cells_common_point(cs[i], cs[j], f.dim))
                    return LocalInjectivityIssue{"edge " + face_to_string(e) +
                                                 " self-intersects"};
            }
        }
    }
    for (size_t i = 0; i < edges.size(); ++i)
        for (size_t j = i + 1; j < edges.size(); ++j) {
            Face shared;
            std::set_intersection(edges[i].begin(), edges[i].end(), edges[j].begin(),
                                  edges[j].end(), std::back_inserter(shared));
            if (shared.size() != 1) continue;
            const Point& sp = f.point(shared[0]);
            auto ca = segs(edges[i]), cb = segs(edges[j]);
            for (const auto& sa : ca)
                for (const auto& sb : cb) {
                    bool a_touch = sa.pts[0] == sp || sa.pts[1] == sp;
                    bool b_touch = sb.pts[0] == sp || sb.pts[1] == sp;
                    if (a_touch && b_touch) {
                        Point ax = sa.pts[0] == sp ? sa.pts[1] : sa.pts[0];
                        Point bx = sb.pts[0] == sp ? sb.pts[1] : sb.pts[0];
                        if (segments_overlap_at_shared(sp, ax, bx))
                            return LocalInjectivityIssue{
                                "edges " + face_to_string(edges[i]) + " and " +
                                face_to_string(edges[j]) + " overlap at their shared vertex"};
                        continue;
                    }
                    auto p = cells_common_point(sa, sb, f.dim);
                    if (p && !(a_touch || b_touch ? *p == sp : false))
                        return LocalInjectivityIssue{"edges " + face_to_string(edges[i]) +
                                                     " and " + face_to_string(edges[j]) +
                                                     " cross away from their shared vertex"};
                }
        }
    return std::nullopt;
}

inline bool is_embedding(const PLMap& f) {
    return !almost_embedding_check(f) && !local_injectivity_check(f);
}

// ---------------------------------------------------------------------------
// Linking numbers

// Geometric cells of an oriented cycle (list of oriented simplices).
inline std::vector<GeomCell> cycle_cells(const PLMap& f, const std::vector<OrientedSimplex>& cyc) {
    std::vector<GeomCell> out;
    for (const auto& s : cyc) {
        int sgn = perm_sign_to_sorted(s.seq) * s.sign;
        for (auto c : f.cells_of_face(s.support())) {
            c.sign *= sgn;
            out.push_back(std::move(c));
        }
    }
    return out;
}

// Signed intersection count of the cone apex * A with the cells of B.
// Throws degeneracy_error if the apex is not generic for this configuration.
inline long long cone_count(const std::vector<GeomCell>& a_cells,
                            const std::vector<GeomCell>& b_cells, const Point& apex, int d) {
    long long total = 0;
    for (const auto& ac : a_cells) {
        GeomCell cone;
        cone.pts.push_back(apex);
        for (const auto& p : ac.pts) cone.pts.push_back(p);
        cone.sign = ac.sign;
        // affine independence of the cone cell
        Mat fr;
        for (size_t i = 1; i < cone.pts.size(); ++i) fr.push_back(sub(cone.pts[i], cone.pts[0]));
        if (rank(fr) != cone.pts.size() - 1)
            throw degeneracy_error("degenerate cone cell (apex in cell's affine hull)");
        for (const auto& bc : b_cells) {
            auto r = transversal_intersection(cone, bc, d);
            if (r.degenerate) throw degeneracy_error("cone intersection degenerate: " + r.reason);
            total += r.count;
        }
    }
    return total;
}

// Linking number of disjoint oriented cycles A (dim k cells) and B (dim l
// cells) in R^{k+l+1}: signed count of (generic apex * A) n B. The apex is
// drawn deterministically from the map hash and retried until generic.
inline long long linking_number(const PLMap& f, const std::vector<OrientedSimplex>& a,
                                const std::vector<OrientedSimplex>& b,
                                CountMode mode = CountMode::Signed,
                                const Point* forced_apex = nullptr) {
    if (a.empty() || b.empty()) throw std::invalid_argument("linking_number: empty cycle");
    int ka = static_cast<int>(a[0].seq.size()) - 1;
    int kb = static_cast<int>(b[0].seq.size()) - 1;
    if (ka + kb + 1 != f.dim)
        throw std::invalid_argument("linking_number: requires d = k + l + 1");
    auto a_cells = cycle_cells(f, a);
    auto b_cells = cycle_cells(f, b);
    for (const auto& ca : a_cells)
        for (const auto& cb : b_cells)
            if (cells_common_point(ca, cb, f.dim))
                throw std::invalid_argument("linking_number: cycle images are not disjoint");
    if (forced_apex) {
        long long v = cone_count(a_cells, b_cells, *forced_apex, f.dim);
        return mode == CountMode::Mod2 ? ((v % 2) + 2) % 2 : v;
    }
    Rng rng(fnv1a("apex", f.hash()));
    std::int64_t radius = 64;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Point apex(f.dim);
        for (int i = 0; i < f.dim; ++i)
            apex[i] = Rational(rng.int_in(-radius, radius), 1 + (attempt % 3));
        try {
            long long v = cone_count(a_cells, b_cells, apex, f.dim);
            return mode == CountMode::Mod2 ? ((v % 2) + 2) % 2 : v;
        } catch (const degeneracy_error&) {
            radius *= 2;
        }
    }
    throw degeneracy_error("linking_number: no generic apex found within budget");
}

// ---------------------------------------------------------------------------
// Random rational maps

// Deterministic in (seed); straight-line map with integer coordinates in
// [-bound, bound]. Redrawn until `accept` (when given) finds no violated
// predicate; the default accepts any draw.
inline PLMap random_rational_map(
    const Complex& k, int d, std::uint64_t seed, std::int64_t bound = (1 << 20),
    const std::function<GeneralPositionReport(const PLMap&)>& accept = {}) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        PLMap f;
        f.source = k;
        f.dim = d;
        for (Vertex v : k.vertices()) {
            Point p(d);
            for (int i = 0; i < d; ++i) p[i] = Rational(rng.int_in(-bound, bound));
            f.coords[v] = std::move(p);
            f.reserve_node_ids(v);
        }
        if (!accept) return f;
        auto report = accept(f);
        if (report.ok()) return f;
    }
    throw std::runtime_error("random_rational_map: retry budget exhausted (bound too small?)");
}

// Affine general position of vertex images: no m+2 points in a common
// m-dimensional affine subspace for m < d, restricted to subsets of size
// <= d+1. Sufficient for straight-line intersection predicates.
inline GeneralPositionReport affine_general_position_report(const PLMap& f) {
    GeneralPositionReport rep;
    std::vector<Vertex> vs = f.source.vertices();
    const int d = f.dim;
    // check all subsets of size 2..d+1 for affine dependence
    std::vector<int> idx;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (idx.size() >= 2) {
            Mat m;
            for (size_t i = 1; i < idx.size(); ++i)
                m.push_back(sub(f.point(vs[idx[i]]), f.point(vs[idx[0]])));
            if (rank(m) < idx.size() - 1) {
                Face a;
                for (int i : idx) a.push_back(vs[i]);
                rep.violations.push_back({a, {}, "affinely dependent vertex images"});
                return;  // supersets are dependent too; skip
            }
        }
        if (idx.size() == static_cast<size_t>(d) + 1) return;
        for (size_t i = start; i < vs.size(); ++i) {
            idx.push_back(static_cast<int>(i));
            self(self, i + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return rep;
}

// Mirror image: negates the first coordinate.
inline PLMap reflect_first_coordinate(PLMap f) {
    for (auto& [id, p] : f.coords) p[0] = -p[0];
    return f;
}

}  // namespace plink
