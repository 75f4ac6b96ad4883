#include "pldpc/tanner.hpp"

#include <chrono>
#include <limits>

#include "pldpc/errors.hpp"

namespace pldpc {
namespace {

// Shared search state with epoch stamping so per-root resets are O(1).
struct SearchState {
    explicit SearchState(std::size_t nodes)
        : dist(nodes, 0), parent(nodes, 0), stamp(nodes, 0), epoch(0) {
        queue.reserve(nodes);
        reached.reserve(nodes);
    }

    void begin_root() {
        ++epoch;
        queue.clear();
        reached.clear();
    }

    bool visited(std::uint32_t x) const { return stamp[x] == epoch; }
    void visit(std::uint32_t x, int d, std::uint32_t par) {
        stamp[x] = epoch;
        dist[x] = d;
        parent[x] = par;
        reached.push_back(x);
    }

    std::vector<int> dist;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch;
    std::vector<std::uint32_t> queue;
    std::vector<std::uint32_t> reached;
};

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

// Shortest cycle "seen from" one root: min over cross edges (u, w) of
// dist(u) + dist(w) + 1. Minimizing over roots gives the exact girth,
// since a root lying on a shortest cycle realizes it.
template <typename Graph>
int root_cycle_bound(const Graph& g, std::uint32_t root, int best, SearchState& st) {
    st.begin_root();
    st.visit(root, 0, kNoParent);
    st.queue.push_back(root);
    for (std::size_t head = 0; head < st.queue.size(); ++head) {
        std::uint32_t u = st.queue[head];
        int d = st.dist[u];
        if (2 * d >= best)
            break; // any cycle seen from here on is at least 2d >= best
        g.for_each_neighbor(u, [&](std::uint32_t w) {
            if (!st.visited(w)) {
                st.visit(w, d + 1, u);
                if (2 * (d + 1) < best)
                    st.queue.push_back(w);
            } else if (w != st.parent[u]) {
                int cycle = d + st.dist[w] + 1;
                if (cycle < best)
                    best = cycle;
            }
        });
    }
    return best;
}

// Number of cycles of length exactly g through the root. Each such cycle
// has a unique antipodal node z at distance g/2 whose two cycle neighbors
// sit at distance g/2 - 1; below the girth radius shortest paths are
// unique and internally disjoint, so every neighbor pair counts one cycle.
template <typename Graph>
std::uint64_t root_cycle_count(const Graph& g, std::uint32_t root, int girth, SearchState& st) {
    const int radius = girth / 2;
    st.begin_root();
    st.visit(root, 0, kNoParent);
    st.queue.push_back(root);
    for (std::size_t head = 0; head < st.queue.size(); ++head) {
        std::uint32_t u = st.queue[head];
        int d = st.dist[u];
        if (d == radius)
            continue;
        g.for_each_neighbor(u, [&](std::uint32_t w) {
            if (!st.visited(w)) {
                st.visit(w, d + 1, u);
                st.queue.push_back(w);
            }
        });
    }
    std::uint64_t pairs = 0;
    for (std::uint32_t z : st.reached) {
        if (st.dist[z] != radius)
            continue;
        std::uint64_t near = 0;
        g.for_each_neighbor(z, [&](std::uint32_t u) {
            if (st.visited(u) && st.dist[u] == radius - 1)
                ++near;
        });
        pairs += near * (near - 1) / 2;
    }
    return pairs;
}

template <typename Graph>
GirthReport search_girth(const Graph& g, const std::vector<std::uint32_t>& roots,
                         std::uint64_t cycles_per_root_weight, int max_len) {
    auto t0 = std::chrono::steady_clock::now();
    GirthReport report;
    const bool capped = max_len > 0;
    int best = capped ? max_len + 2 : std::numeric_limits<int>::max() - 1;
    const int cap_sentinel = best;

    SearchState st(g.node_count());
    for (std::uint32_t root : roots) {
        best = root_cycle_bound(g, root, best, st);
        if (best == 4)
            break; // bipartite minimum
    }

    if (best >= cap_sentinel) {
        if (capped) {
            report.girth = max_len + 2;
            report.lower_bound = true;
        } else {
            report.acyclic = true;
        }
    } else {
        report.girth = best;
        std::uint64_t through_sum = 0;
        for (std::uint32_t root : roots)
            through_sum += root_cycle_count(g, root, best, st);
        // every cycle contains girth/2 variable nodes, once per root orbit
        report.multiplicity = through_sum * cycles_per_root_weight / (static_cast<std::uint64_t>(best) / 2);
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// adjacency-list view: variables are [0, V), checks [V, V + C)
struct AdjView {
    const TannerGraph& g;
    std::size_t node_count() const { return g.var_count + g.check_count; }
    template <typename Fn>
    void for_each_neighbor(std::uint32_t x, Fn fn) const {
        if (x < g.var_count) {
            for (std::uint32_t c : g.var_adj[x])
                fn(static_cast<std::uint32_t>(g.var_count + c));
        } else {
            for (std::uint32_t v : g.check_adj[x - g.var_count])
                fn(v);
        }
    }
};

// circulant view: adjacency from shift arithmetic, nothing materialized
struct QcView {
    std::uint32_t v;
    std::size_t proto_cols;
    std::size_t proto_rows;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> col_cells; // col -> (row, shift)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> row_cells; // row -> (col, shift)

    std::size_t node_count() const { return (proto_cols + proto_rows) * v; }
    std::size_t var_nodes() const { return proto_cols * v; }

    // blocks satisfy B[i][(i+s) mod v] = 1: a variable column j meets the
    // check row (j-s) mod v and vice versa
    template <typename Fn>
    void for_each_neighbor(std::uint32_t x, Fn fn) const {
        if (x < var_nodes()) {
            std::uint32_t c = x / v, j = x % v;
            for (auto [r, s] : col_cells[c])
                fn(static_cast<std::uint32_t>(var_nodes() + std::size_t{r} * v + (j + v - s) % v));
        } else {
            std::uint32_t y = x - static_cast<std::uint32_t>(var_nodes());
            std::uint32_t r = y / v, i = y % v;
            for (auto [c, s] : row_cells[r])
                fn(static_cast<std::uint32_t>(std::size_t{c} * v + (i + s) % v));
        }
    }
};

} // namespace

TannerGraph from_parity_check(const BitMatrix& h) {
    if (h.rows() == 0 || h.cols() == 0)
        throw InvalidInput("empty parity-check matrix");
    TannerGraph g;
    g.var_count = h.cols();
    g.check_count = h.rows();
    g.var_adj.resize(g.var_count);
    g.check_adj.resize(g.check_count);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c)
            if (h.get(r, c)) {
                g.edges.emplace_back(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(r));
                g.var_adj[c].push_back(static_cast<std::uint32_t>(r));
                g.check_adj[r].push_back(static_cast<std::uint32_t>(c));
            }
    return g;
}

GirthReport girth(const TannerGraph& g) {
    return girth_up_to(g, 0);
}

GirthReport girth_up_to(const TannerGraph& g, int max_len) {
    std::vector<std::uint32_t> roots(g.var_count);
    for (std::uint32_t i = 0; i < g.var_count; ++i)
        roots[i] = i;
    return search_girth(AdjView{g}, roots, 1, max_len);
}

GirthReport qc_girth(const QcParityCheck& h, int max_len) {
    if (!h.is_pure_qc())
        throw UnsupportedStructure("qc_girth requires an untruncated circulant matrix");
    return qc_girth(h.proto, h.structure, max_len);
}

GirthReport qc_girth(const ProtoMatrix& p, const ShiftAssignment& shifts, int max_len) {
    if (!shifts.all_cyclic())
        throw UnsupportedStructure("qc_girth requires cyclic shifts");
    if (max_len < 4)
        throw InvalidInput("max_len must be at least 4");
    shifts.validate_against(p);

    QcView view;
    view.v = shifts.v;
    view.proto_cols = p.cols;
    view.proto_rows = p.rows;
    view.col_cells.resize(p.cols);
    view.row_cells.resize(p.rows);
    for (std::uint32_t r = 0; r < p.rows; ++r)
        for (std::uint32_t c = 0; c < p.cols; ++c)
            for (const EdgePerm& e : shifts.cell(r, c)) {
                view.col_cells[c].emplace_back(r, e.shift);
                view.row_cells[r].emplace_back(c, e.shift);
            }

    // one representative variable per block-column; translation j -> j+1
    // within blocks is an automorphism, so each orbit is covered
    std::vector<std::uint32_t> roots(p.cols);
    for (std::uint32_t c = 0; c < p.cols; ++c)
        roots[c] = c * shifts.v;
    return search_girth(view, roots, shifts.v, max_len);
}

} // namespace pldpc
