#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fourblock {

using VertexId = std::uint32_t;
using HalfEdgeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xFFFFFFFFu;

/// Thrown when a rotation-format document cannot be parsed.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct HalfEdgeRec {
    VertexId tail = kNone;
    HalfEdgeId next = kNone; // CCW successor in tail's incidence list
    HalfEdgeId prev = kNone; // CCW predecessor
    std::uint32_t index_in_tail = 0; // valid while the tail's cache epoch matches
};

struct VertexRec {
    HalfEdgeId first = kNone; // entry point into the cyclic incidence list
    std::uint32_t degree = 0;
    std::uint32_t origin = kNone;   // external id; copies inherit it
    std::uint32_t index_epoch = 0;  // 0 = cache invalid
};

/// Embedded simple planar graph as half-edges with cyclic CCW incidence
/// lists. Twin half-edges are allocated in pairs, so twin(h) == h ^ 1 and
/// the undirected edge id of h is h >> 1. Identifiers stay stable across
/// incidence-list surgery (transfer_arc), which is what the splitting
/// phase relies on.
class RotationGraph {
public:
    VertexId add_vertex(std::uint32_t origin) {
        vertices_.push_back(VertexRec{kNone, 0, origin, 0});
        return static_cast<VertexId>(vertices_.size() - 1);
    }

    void reserve(std::size_t vertex_count, std::size_t half_edge_count) {
        vertices_.reserve(vertex_count);
        halves_.reserve(half_edge_count);
    }

    /// Allocates the half-edge pair for {u,v}; both halves start unlinked.
    /// Returns the half-edge u->v (its twin is v->u).
    HalfEdgeId new_edge(VertexId u, VertexId v) {
        halves_.push_back(HalfEdgeRec{u, kNone, kNone, 0});
        halves_.push_back(HalfEdgeRec{v, kNone, kNone, 0});
        return static_cast<HalfEdgeId>(halves_.size() - 2);
    }

    /// Links an unlinked half-edge into its tail's list right after `after`.
    void attach_after(HalfEdgeId h, HalfEdgeId after) {
        VertexRec& v = vertices_[halves_[h].tail];
        HalfEdgeId nxt = halves_[after].next;
        halves_[h].prev = after;
        halves_[h].next = nxt;
        halves_[after].next = h;
        halves_[nxt].prev = h;
        ++v.degree;
        v.index_epoch = 0;
    }

    /// Appends an unlinked half-edge at the end of its tail's list
    /// (i.e. as the CCW predecessor of the list's first entry).
    void attach_back(HalfEdgeId h) {
        VertexRec& v = vertices_[halves_[h].tail];
        if (v.first == kNone) {
            v.first = h;
            halves_[h].next = halves_[h].prev = h;
            ++v.degree;
            v.index_epoch = 0;
        } else {
            attach_after(h, halves_[v.first].prev);
        }
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return halves_.size() / 2; }
    std::size_t num_half_edges() const { return halves_.size(); }

    static HalfEdgeId twin(HalfEdgeId h) { return h ^ 1u; }
    static EdgeId edge_of(HalfEdgeId h) { return h >> 1; }
    static HalfEdgeId half_of(EdgeId e) { return e << 1; }

    VertexId tail(HalfEdgeId h) const { return halves_[h].tail; }
    VertexId head(HalfEdgeId h) const { return halves_[twin(h)].tail; }
    HalfEdgeId ccw_next(HalfEdgeId h) const { return halves_[h].next; }
    HalfEdgeId ccw_prev(HalfEdgeId h) const { return halves_[h].prev; }
    std::uint32_t degree(VertexId v) const { return vertices_[v].degree; }
    std::uint32_t origin(VertexId v) const { return vertices_[v].origin; }
    HalfEdgeId first_half(VertexId v) const { return vertices_[v].first; }

    HalfEdgeId outer_half_edge() const { return outer_; }
    void set_outer_half_edge(HalfEdgeId h) { outer_ = h; }

    /// Root vertex of the DFS passes: the tail of the designated outer edge.
    VertexId root() const { return tail(outer_); }

    /// Successor on the walk of the face to the LEFT of h:
    /// for h = (u -> v), the walk continues with (v -> p) where p is the
    /// CCW predecessor of u in v's incidence list.
    HalfEdgeId face_next(HalfEdgeId h) const { return ccw_prev(twin(h)); }

    std::vector<HalfEdgeId> face_walk(HalfEdgeId h) const {
        std::vector<HalfEdgeId> walk;
        HalfEdgeId cur = h;
        do {
            walk.push_back(cur);
            cur = face_next(cur);
        } while (cur != h && walk.size() <= num_half_edges());
        if (cur != h) throw std::logic_error("face walk does not close");
        return walk;
    }

    /// CCW position of h in its tail's list, building the cache on demand.
    std::uint32_t index_in_tail(HalfEdgeId h) const {
        ensure_index(halves_[h].tail);
        return halves_[h].index_in_tail;
    }

    /// Size of the angle between two half-edges at their common tail:
    /// the number of CCW turns from `from` until `to` is seen.
    std::uint32_t angle_size(HalfEdgeId from, HalfEdgeId to) const {
        VertexId v = halves_[from].tail;
        if (halves_[to].tail != v)
            throw std::invalid_argument("angle_size: half-edges have different tails");
        std::uint32_t d = vertices_[v].degree;
        return (index_in_tail(to) + d - index_in_tail(from)) % d;
    }

    /// angle_size by vertex ids; locating the half-edges costs O(deg(v)).
    std::uint32_t angle_size(VertexId v, VertexId u, VertexId w) const {
        HalfEdgeId hu = half_between(v, u);
        HalfEdgeId hw = half_between(v, w);
        if (hu == kNone || hw == kNone)
            throw std::invalid_argument("angle_size: not a neighbor of v");
        return angle_size(hu, hw);
    }

    /// The half-edge u->v, or kNone. O(deg(u)).
    HalfEdgeId half_between(VertexId u, VertexId v) const {
        HalfEdgeId h = vertices_[u].first;
        if (h == kNone) return kNone;
        do {
            if (head(h) == v) return h;
            h = halves_[h].next;
        } while (h != vertices_[u].first);
        return kNone;
    }

    /// Moves the half-edges strictly CCW-between `from` and `to` (both
    /// incident to the same tail) out of that list and appends them, order
    /// preserved, to `target`'s list. Twins are untouched; moved half-edges
    /// keep their identifiers. Returns the number moved.
    std::size_t transfer_arc(HalfEdgeId from, HalfEdgeId to, VertexId target) {
        VertexId v = halves_[from].tail;
        if (halves_[to].tail != v)
            throw std::invalid_argument("transfer_arc: from/to not incident to the same vertex");
        std::size_t moved = 0;
        std::size_t guard = vertices_[v].degree;
        HalfEdgeId h = halves_[from].next;
        while (h != to) {
            if (moved >= guard)
                throw std::logic_error("transfer_arc: walk does not reach 'to'");
            HalfEdgeId nxt = halves_[h].next;
            detach(h);
            halves_[h].tail = target;
            attach_back(h);
            ++moved;
            h = nxt;
        }
        vertices_[v].first = from; // keep the entry point off the moved arc
        vertices_[v].index_epoch = 0;
        vertices_[target].index_epoch = 0;
        transfer_count_ += moved;
        return moved;
    }

    /// Total half-edges moved by transfer_arc over this graph's lifetime.
    std::uint64_t transfer_count() const { return transfer_count_; }

    /// Structural audit: twin involution, list consistency, degree counts.
    /// Returns an empty string if sound, else a description of the defect.
    std::string audit() const {
        std::vector<char> seen(halves_.size(), 0);
        std::size_t total = 0;
        for (VertexId v = 0; v < vertices_.size(); ++v) {
            const VertexRec& rec = vertices_[v];
            if (rec.first == kNone) {
                if (rec.degree != 0) return "degree nonzero on empty list";
                continue;
            }
            HalfEdgeId h = rec.first;
            std::uint32_t count = 0;
            do {
                if (h >= halves_.size()) return "half-edge id out of range";
                if (seen[h]) return "half-edge linked into two lists";
                seen[h] = 1;
                if (halves_[h].tail != v) return "tail does not match owning list";
                if (halves_[halves_[h].next].prev != h) return "next/prev links broken";
                if (head(h) == v && twin(h) == h) return "half-edge is its own twin";
                ++count;
                ++total;
                if (count > halves_.size()) return "incidence list does not close";
                h = halves_[h].next;
            } while (h != rec.first);
            if (count != rec.degree) return "degree does not match list length";
        }
        if (total != halves_.size()) return "half-edge not linked into any list";
        return {};
    }

private:
    void detach(HalfEdgeId h) {
        VertexRec& v = vertices_[halves_[h].tail];
        if (halves_[h].next == h) {
            v.first = kNone;
        } else {
            halves_[halves_[h].prev].next = halves_[h].next;
            halves_[halves_[h].next].prev = halves_[h].prev;
            if (v.first == h) v.first = halves_[h].next;
        }
        --v.degree;
        v.index_epoch = 0;
    }

    void ensure_index(VertexId v) const {
        VertexRec& rec = vertices_[v];
        if (rec.index_epoch != 0 || rec.first == kNone) return;
        HalfEdgeId h = rec.first;
        std::uint32_t i = 0;
        do {
            halves_[h].index_in_tail = i++;
            h = halves_[h].next;
        } while (h != rec.first);
        rec.index_epoch = 1;
    }

    mutable std::vector<VertexRec> vertices_; // mutable for the lazy index cache
    mutable std::vector<HalfEdgeRec> halves_;
    HalfEdgeId outer_ = kNone;
    std::uint64_t transfer_count_ = 0;
};

/// Face partition: face id per half-edge plus per-face representative.
struct FacePartition {
    std::vector<std::uint32_t> face_of; // indexed by half-edge
    std::vector<HalfEdgeId> rep;        // one boundary half-edge per face
    std::vector<std::uint32_t> length;  // boundary length per face
    std::size_t count() const { return rep.size(); }
};

inline FacePartition enumerate_faces(const RotationGraph& g) {
    FacePartition fp;
    fp.face_of.assign(g.num_half_edges(), kNone);
    for (HalfEdgeId h = 0; h < g.num_half_edges(); ++h) {
        if (fp.face_of[h] != kNone) continue;
        std::uint32_t id = static_cast<std::uint32_t>(fp.rep.size());
        fp.rep.push_back(h);
        std::uint32_t len = 0;
        HalfEdgeId cur = h;
        do {
            fp.face_of[cur] = id;
            ++len;
            cur = g.face_next(cur);
        } while (cur != h);
        fp.length.push_back(len);
    }
    return fp;
}

enum class Finding : std::uint8_t {
    CorruptStructure,
    NotSimple,
    NotConnected,
    NonTriangularFace,
    BadOuterEdge,
    EulerViolation,
    TooSmall,
};

struct Diagnostics {
    struct Item {
        Finding kind;
        std::string message;
    };
    std::vector<Item> items;

    bool empty() const { return items.empty(); }
    bool has(Finding f) const {
        for (const auto& it : items)
            if (it.kind == f) return true;
        return false;
    }
    void add(Finding f, std::string msg) { items.push_back({f, std::move(msg)}); }
};

/// Checks that g is a simple, connected, embedded triangulation (every
/// face walk, including the outer one, has length 3) with a sane outer
/// edge. Findings are returned, never thrown.
inline Diagnostics validate_triangulation(const RotationGraph& g) {
    Diagnostics d;
    if (std::string flaw = g.audit(); !flaw.empty()) {
        d.add(Finding::CorruptStructure, flaw);
        return d;
    }
    if (g.num_vertices() < 3) {
        d.add(Finding::TooSmall, "fewer than 3 vertices");
        return d;
    }
    if (g.outer_half_edge() == kNone || g.outer_half_edge() >= g.num_half_edges())
        d.add(Finding::BadOuterEdge, "outer half-edge unset or out of range");

    // simplicity: no loops, no repeated head at one tail
    {
        std::vector<std::uint32_t> stamp(g.num_vertices(), kNone);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            HalfEdgeId h = g.first_half(v);
            if (h == kNone) continue;
            do {
                VertexId w = g.head(h);
                if (w == v)
                    d.add(Finding::NotSimple, "loop at vertex " + std::to_string(g.origin(v)));
                else if (stamp[w] == v)
                    d.add(Finding::NotSimple, "parallel edge between " + std::to_string(g.origin(v)) +
                                                  " and " + std::to_string(g.origin(w)));
                else
                    stamp[w] = v;
                h = g.ccw_next(h);
            } while (h != g.first_half(v));
        }
    }

    // connectivity
    {
        std::vector<char> visited(g.num_vertices(), 0);
        std::vector<VertexId> queue = {0};
        visited[0] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            VertexId v = queue[i];
            HalfEdgeId h = g.first_half(v);
            if (h == kNone) continue;
            do {
                VertexId w = g.head(h);
                if (!visited[w]) {
                    visited[w] = 1;
                    queue.push_back(w);
                }
                h = g.ccw_next(h);
            } while (h != g.first_half(v));
        }
        if (queue.size() != g.num_vertices())
            d.add(Finding::NotConnected, "graph is not connected");
    }

    FacePartition fp = enumerate_faces(g);
    for (std::size_t f = 0; f < fp.count(); ++f) {
        if (fp.length[f] != 3) {
            d.add(Finding::NonTriangularFace,
                  "face of length " + std::to_string(fp.length[f]));
            break; // one finding per defect class is enough
        }
    }
    long long euler = static_cast<long long>(g.num_vertices()) -
                      static_cast<long long>(g.num_edges()) +
                      static_cast<long long>(fp.count());
    if (euler != 2)
        d.add(Finding::EulerViolation, "n - m + f = " + std::to_string(euler));
    return d;
}

} // namespace fourblock
