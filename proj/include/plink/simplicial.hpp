// Finite simplicial complexes, oriented simplices, and the F-family builders.
//
// Conventions used throughout the library:
//   * a face is a sorted vector of distinct integer vertex labels;
//   * complexes are immutable after construction and downward closed;
//   * an oriented simplex is a vertex sequence plus an explicit sign, the
//     sequence order inducing the orientation;
//   * boundary convention: [d(a0,...,am) : (a1,...,am)] = +1, dropping the
//     vertex at position i contributes (-1)^i.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace plink {

using Vertex = int;
using Face = std::vector<Vertex>;  // sorted, distinct

inline Face sorted_face(Face f) {
    std::sort(f.begin(), f.end());
    for (size_t i = 1; i < f.size(); ++i)
        if (f[i] == f[i - 1]) throw std::invalid_argument("face with repeated vertex");
    return f;
}

inline bool faces_disjoint(const Face& a, const Face& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

inline bool face_subset(const Face& small, const Face& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

class Complex {
  public:
    Complex() = default;

    // Downward closure of the given faces; every used vertex becomes a face.
    static Complex from_maximal(std::vector<Vertex> vertices, const std::vector<Face>& maximal) {
        Complex k;
        std::sort(vertices.begin(), vertices.end());
        k.vertices_ = std::move(vertices);
        std::set<Face> closed;
        std::vector<Face> stack;
        for (const auto& f : maximal) stack.push_back(sorted_face(f));
        while (!stack.empty()) {
            Face f = std::move(stack.back());
            stack.pop_back();
            if (f.empty() || closed.count(f)) continue;
            closed.insert(f);
            if (f.size() > 1)
                for (size_t i = 0; i < f.size(); ++i) {
                    Face g;
                    g.reserve(f.size() - 1);
                    for (size_t j = 0; j < f.size(); ++j)
                        if (j != i) g.push_back(f[j]);
                    if (!closed.count(g)) stack.push_back(std::move(g));
                }
        }
        for (const auto& f : closed)
            for (Vertex v : f)
                if (!std::binary_search(k.vertices_.begin(), k.vertices_.end(), v))
                    throw std::invalid_argument("face uses vertex outside the complex");
        k.faces_ = std::move(closed);
        return k;
    }

    static Complex from_faces(std::vector<Vertex> vertices, std::set<Face> faces) {
        Complex k;
        std::sort(vertices.begin(), vertices.end());
        k.vertices_ = std::move(vertices);
        k.faces_ = std::move(faces);
        if (!k.is_downward_closed()) throw std::invalid_argument("faces not downward closed");
        return k;
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::set<Face>& faces() const { return faces_; }
    bool has_face(const Face& f) const { return faces_.count(f) > 0; }

    int dim() const {
        int d = -1;
        for (const auto& f : faces_) d = std::max<int>(d, static_cast<int>(f.size()) - 1);
        return d;
    }

    std::vector<Face> faces_of_dim(int d) const {
        std::vector<Face> out;
        for (const auto& f : faces_)
            if (static_cast<int>(f.size()) == d + 1) out.push_back(f);
        return out;
    }

    std::vector<Face> maximal_faces() const {
        std::vector<Face> out;
        for (const auto& f : faces_) {
            bool maximal = true;
            for (Vertex v : vertices_) {
                if (std::binary_search(f.begin(), f.end(), v)) continue;
                Face g = f;
                g.insert(std::lower_bound(g.begin(), g.end(), v), v);
                if (faces_.count(g)) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) out.push_back(f);
        }
        return out;
    }

    std::vector<int> f_vector() const {
        std::vector<int> fv(static_cast<size_t>(std::max(dim() + 1, 0)), 0);
        for (const auto& f : faces_) fv[f.size() - 1]++;
        return fv;
    }

    bool is_downward_closed() const {
        for (const auto& f : faces_) {
            if (f.size() <= 1) continue;
            for (size_t i = 0; i < f.size(); ++i) {
                Face g;
                for (size_t j = 0; j < f.size(); ++j)
                    if (j != i) g.push_back(f[j]);
                if (!faces_.count(g)) return false;
            }
        }
        return true;
    }

    bool operator==(const Complex& o) const {
        return vertices_ == o.vertices_ && faces_ == o.faces_;
    }

  private:
    std::vector<Vertex> vertices_;
    std::set<Face> faces_;
};

// ---------------------------------------------------------------------------
// Family builders

enum class FamilyTag { F, Fminus, Fprime, Kn };

struct FamilySelector {
    FamilyTag tag = FamilyTag::F;
    int k = 0;
    int l = 0;
    int n = 0;  // for Kn
};

namespace detail {
inline void subsets_up_to(const std::vector<Vertex>& ground, size_t max_size,
                          std::vector<Face>& out) {
    // all nonempty subsets of size <= max_size
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
        for (size_t i = start; i < ground.size(); ++i) {
            cur.push_back(ground[i]);
            out.push_back(cur);
            if (cur.size() < max_size) self(self, i + 1);
            cur.pop_back();
        }
    };
    if (max_size > 0) rec(rec, 0);
}
}  // namespace detail

// F_{k,l}: vertex set [k+l+3] plus 0; faces are all simplices of dimension
// at most k on [k+l+3] together with the 0-cones over simplices of dimension
// at most l. F' caps the 0-cones one dimension lower. F_- removes the open
// simplex {0,...,l+1} only.
inline Complex build_family(const FamilySelector& sel) {
    if (sel.tag == FamilyTag::Kn) {
        if (sel.n < 1) throw std::invalid_argument("Kn requires n >= 1");
        std::vector<Vertex> verts(sel.n);
        for (int i = 0; i < sel.n; ++i) verts[i] = i + 1;
        std::vector<Face> maximal;
        if (sel.n == 1) maximal.push_back({1});
        for (int i = 1; i <= sel.n; ++i)
            for (int j = i + 1; j <= sel.n; ++j) maximal.push_back({i, j});
        return Complex::from_maximal(verts, maximal);
    }
    const int k = sel.k, l = sel.l;
    if (k < 0 || l < 0 || l > k) throw std::invalid_argument("family requires 0 <= l <= k");
    const int n = k + l + 3;
    std::vector<Vertex> ground(n);
    for (int i = 0; i < n; ++i) ground[i] = i + 1;
    std::vector<Vertex> verts = ground;
    verts.insert(verts.begin(), 0);

    std::set<Face> faces;
    std::vector<Face> tmp;
    detail::subsets_up_to(ground, static_cast<size_t>(k) + 1, tmp);
    for (auto& f : tmp) faces.insert(f);
    tmp.clear();
    const size_t cone_cap =
        sel.tag == FamilyTag::Fprime ? static_cast<size_t>(l) : static_cast<size_t>(l) + 1;
    detail::subsets_up_to(ground, cone_cap, tmp);
    faces.insert({0});
    for (auto& f : tmp) {
        Face g = f;
        g.insert(g.begin(), 0);
        faces.insert(g);
    }
    if (sel.tag == FamilyTag::Fminus) {
        Face removed;
        for (int v = 0; v <= l + 1; ++v) removed.push_back(v);
        if (!faces.count(removed)) throw std::logic_error("F_- removal target missing");
        faces.erase(removed);
    }
    return Complex::from_faces(verts, std::move(faces));
}

// Closed simplex on the given vertex set, as a subcomplex.
inline Complex full_simplex(std::vector<Vertex> verts) {
    return Complex::from_maximal(verts, {sorted_face(verts)});
}

// Boundary sphere of the simplex on the given vertex set.
inline Complex boundary_sphere(std::vector<Vertex> verts) {
    Face top = sorted_face(verts);
    std::vector<Face> maximal;
    for (size_t i = 0; i < top.size(); ++i) {
        Face g;
        for (size_t j = 0; j < top.size(); ++j)
            if (j != i) g.push_back(top[j]);
        maximal.push_back(g);
    }
    return Complex::from_maximal(top, maximal);
}

struct CanonicalSubcomplexes {
    Complex sigma_k;   // boundary of the simplex on {l+2, ..., k+l+3}
    Complex sigma_l;   // boundary of the simplex on {0, ..., l+1}
    Complex delta_k;   // simplex on {l+3, ..., k+l+3}
    Complex delta_l1;  // simplex on {0, ..., l+1}
};

inline CanonicalSubcomplexes canonical_subcomplexes(int k, int l) {
    if (k < 0 || l < 0 || l > k) throw std::invalid_argument("requires 0 <= l <= k");
    std::vector<Vertex> sl, sk, dk;
    for (int v = 0; v <= l + 1; ++v) sl.push_back(v);
    for (int v = l + 2; v <= k + l + 3; ++v) sk.push_back(v);
    for (int v = l + 3; v <= k + l + 3; ++v) dk.push_back(v);
    return {boundary_sphere(sk), boundary_sphere(sl), full_simplex(dk), full_simplex(sl)};
}

// ---------------------------------------------------------------------------
// Oriented simplices and signs

struct OrientedSimplex {
    std::vector<Vertex> seq;  // distinct labels; order induces the orientation
    int sign = 1;

    Face support() const { return sorted_face(seq); }
};

// Parity of the permutation taking sorted(seq) to seq.
inline int perm_sign_to_sorted(const std::vector<Vertex>& seq) {
    int inversions = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) throw std::invalid_argument("repeated element");
            if (seq[i] > seq[j]) ++inversions;
        }
    return inversions % 2 == 0 ? 1 : -1;
}

// Sign of seq as a permutation of the ground sequence.
inline int sgn_permutation(const std::vector<Vertex>& seq, const std::vector<Vertex>& ground) {
    if (seq.size() != ground.size()) throw std::invalid_argument("sgn: size mismatch");
    std::vector<Vertex> g = ground, s = seq;
    std::sort(g.begin(), g.end());
    std::vector<Vertex> ss = s;
    std::sort(ss.begin(), ss.end());
    if (g != ss) throw std::invalid_argument("sgn: not a permutation of the ground set");
    return perm_sign_to_sorted(seq) * perm_sign_to_sorted(ground);
}

// Incidence number [d(parent) : facet]; 0 unless facet's support is a
// codimension-1 subset of parent's support.
inline int incidence(const OrientedSimplex& parent, const OrientedSimplex& facet) {
    if (parent.seq.size() != facet.seq.size() + 1) return 0;
    Face ps = parent.support(), fs = facet.support();
    if (!face_subset(fs, ps)) return 0;
    // position of the dropped vertex in parent's sequence
    Vertex dropped = -1;
    for (Vertex v : ps)
        if (!std::binary_search(fs.begin(), fs.end(), v)) dropped = v;
    size_t pos = 0;
    std::vector<Vertex> remaining;
    for (size_t i = 0; i < parent.seq.size(); ++i) {
        if (parent.seq[i] == dropped) {
            pos = i;
            continue;
        }
        remaining.push_back(parent.seq[i]);
    }
    int rel = perm_sign_to_sorted(remaining) * perm_sign_to_sorted(facet.seq);
    int drop_sign = pos % 2 == 0 ? 1 : -1;
    return drop_sign * rel * parent.sign * facet.sign;
}

// All ordered pairs of disjoint faces, optionally filtered by dim(a)+dim(b).
inline std::vector<std::pair<Face, Face>> disjoint_simplex_pairs(const Complex& k,
                                                                 int dim_sum = -1) {
    std::vector<std::pair<Face, Face>> out;
    for (const auto& a : k.faces())
        for (const auto& b : k.faces()) {
            if (!faces_disjoint(a, b)) continue;
            if (dim_sum >= 0 &&
                static_cast<int>(a.size()) + static_cast<int>(b.size()) - 2 != dim_sum)
                continue;
            out.push_back({a, b});
        }
    return out;
}

// Oriented facets of the boundary sphere of the simplex on `verts`,
// i.e. d(v0,...,vm) = sum (-1)^i (v0,...,^vi,...,vm).
inline std::vector<OrientedSimplex> boundary_cycle(std::vector<Vertex> verts) {
    Face top = sorted_face(std::move(verts));
    std::vector<OrientedSimplex> out;
    for (size_t i = 0; i < top.size(); ++i) {
        OrientedSimplex s;
        for (size_t j = 0; j < top.size(); ++j)
            if (j != i) s.seq.push_back(top[j]);
        s.sign = i % 2 == 0 ? 1 : -1;
        out.push_back(std::move(s));
    }
    return out;
}

// Incidence of an oriented cell in an oriented sphere given by boundary_cycle
// of `sphere_verts`: +-1 when the cell is a facet of the sphere, else 0.
inline int sphere_incidence(const std::vector<Vertex>& sphere_verts, const OrientedSimplex& cell) {
    Face top = sorted_face(sphere_verts);
    Face supp = cell.support();
    if (supp.size() + 1 != top.size() || !face_subset(supp, top)) return 0;
    size_t dropped_pos = 0;
    std::vector<Vertex> kept;
    for (size_t i = 0; i < top.size(); ++i) {
        if (!std::binary_search(supp.begin(), supp.end(), top[i])) {
            dropped_pos = i;
            continue;
        }
        kept.push_back(top[i]);
    }
    (void)kept;
    int facet_sign = dropped_pos % 2 == 0 ? 1 : -1;
    return facet_sign * perm_sign_to_sorted(cell.seq) * cell.sign;
}

inline std::string face_to_string(const Face& f) {
    std::string s = "{";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f[i]);
    }
    return s + "}";
}

}  // namespace plink
