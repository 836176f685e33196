#include "hz4/reducibility.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace hz4 {

namespace {

constexpr int kSwapBudget = 64;

struct ExtCtx {
    int swaps = 0;
    std::set<uint64_t> seen_states;
};

ConfigMatch mk_a(int v, int z, int w, int x, int y) {
    ConfigMatch m;
    m.kind = ConfigKind::A;
    m.roles = {v, z, w, x, y, -1, -1, -1};
    return m;
}

// Shared machinery for the three extension procedures. The dispatch loop
// below re-enters after every reduction ("reduces to Case N" in the paper is
// a tail call into the dispatcher, which re-reads the actual state).
class ExtBase {
public:
    ExtBase(const Graph& g, const ConfigMatch& m, const EdgeColoring& phi, ExtCtx* ctx,
            std::vector<TraceStep>* steps)
        : g(g), m(m), phi(phi), ctx(ctx), steps(steps) {
        bind();
    }
    virtual ~ExtBase() = default;

    EdgeColoring run() {
        int rounds = 0;
        while (!done) {
            if (++rounds > 128) fail("round budget exceeded");
            guard();
            if (try_direct("entry")) break;
            do_normalize("entry");
            if (done) break;
            dispatch();
        }
        if (!phi.is_total() || !phi.is_proper()) fail("finished coloring invalid");
        return phi;
    }

protected:
    const Graph& g;
    ConfigMatch m;
    EdgeColoring phi;
    ExtCtx* ctx;
    std::vector<TraceStep>* steps;
    std::vector<char> hedge;
    int eidx = -1;
    int end3 = -1, end4 = -1;
    bool done = false;

    virtual void dispatch() = 0;

    void bind() {
        hedge.assign(g.m(), 0);
        for (const Edge& e : m.config_edges()) {
            int idx = g.edge_index(e.u, e.v);
            if (idx < 0) fail("configuration edge absent");
            hedge[idx] = 1;
        }
        Edge de = m.designated_edge();
        eidx = g.edge_index(de.u, de.v);
        if (g.degree(de.u) == 4) {
            end4 = de.u;
            end3 = de.v;
        } else {
            end4 = de.v;
            end3 = de.u;
        }
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw extension_error("extension internal error: " + why);
    }
    void expect(bool cond, const char* why) const {
        if (!cond) fail(why);
    }

    void guard() {
        uint64_t h = phi.hash();
        for (int i = 0; i < m.role_count(); ++i) h = h * 1315423911ull + m.roles[i];
        h = h * 1315423911ull + static_cast<uint64_t>(m.kind) * 7 + eidx;
        if (!ctx->seen_states.insert(h).second) fail("dispatch state repeated");
    }

    int colv(int u, int v) const { return phi.color(g.edge_index(u, v)); }
    bool sees(int v, int c) const { return phi.sees(v, c); }
    ColorMask missm(int v) const { return phi.missing(v); }
    static int lowest(ColorMask mask) { return __builtin_ctz(mask); }
    int pcol(int edge_id) const { return phi.color(edge_id); }

    bool in_roles(int v) const {
        for (int i = 0; i < m.role_count(); ++i)
            if (m.roles[i] == v) return true;
        return false;
    }

    int sole_pendant(int v) const {
        int found = -1;
        for (auto [w, idx] : g.inc(v)) {
            (void)w;
            if (hedge[idx]) continue;
            if (found >= 0) fail("expected a single pendant edge");
            found = idx;
        }
        if (found < 0) fail("missing pendant edge");
        return found;
    }

    bool total_minus_e() const {
        for (int e = 0; e < g.m(); ++e) {
            if (e == eidx) {
                if (phi.color(e) != -1) return false;
            } else if (phi.color(e) == -1) {
                return false;
            }
        }
        return true;
    }

    void record_assign(const std::string& label, int u, int v, int c) {
        TraceStep st;
        st.label = label;
        st.action = StepAction::Assign;
        st.eu = std::min(u, v);
        st.ev = std::max(u, v);
        st.color = c;
        steps->push_back(std::move(st));
    }

    void assign(const std::string& label, int u, int v, int c) {
        int idx = g.edge_index(u, v);
        expect(idx >= 0, "assign on a non-edge");
        phi.set(idx, c);
        record_assign(label, u, v, c);
    }

    void unassign(const std::string& label, int u, int v) {
        int idx = g.edge_index(u, v);
        expect(idx >= 0 && phi.color(idx) != -1, "unassign on an uncolored edge");
        phi.unset(idx);
        TraceStep st;
        st.label = label;
        st.action = StepAction::Unassign;
        st.eu = std::min(u, v);
        st.ev = std::max(u, v);
        steps->push_back(std::move(st));
    }

    void permute(const std::string& label, const std::vector<int>& perm) {
        phi = apply_color_permutation(phi, perm);
        TraceStep st;
        st.label = label;
        st.action = StepAction::Permute;
        st.perm = perm;
        steps->push_back(std::move(st));
    }

    void do_swap(const std::string& label, const KempeChain& ch, bool restricted,
                 bool auto_try = true) {
        if (ch.edge_ids.empty()) return;
        expect(++ctx->swaps <= kSwapBudget, "swap budget exceeded");
        swap_chain(phi, ch);
        TraceStep st;
        st.label = label;
        st.action = StepAction::Swap;
        st.chain = ch;
        st.restricted = restricted;
        steps->push_back(std::move(st));
        if (auto_try && total_minus_e()) try_direct(label);
    }

    KempeChain swap_at(const std::string& label, int v, int i, int j, bool auto_try = true) {
        KempeChain ch = kempe_chain(phi, v, i, j);
        do_swap(label, ch, false, auto_try);
        return ch;
    }

    KempeChain swap_sub(const std::string& label, int v, int i, int j, bool auto_try = true) {
        KempeChain ch = kempe_chain(phi, v, i, j, &hedge);
        do_swap(label, ch, true, auto_try);
        return ch;
    }

    // Other endpoint of the restricted (i,j)-chain at v; v itself for a
    // singleton chain.
    int sub_other_end(int v, int i, int j) const {
        KempeChain ch = kempe_chain(phi, v, i, j, &hedge);
        if (ch.shape != ChainShape::Path) fail("unexpected cycle chain");
        if (ch.vertices.size() == 1) return v;
        return ch.other_end(v);
    }

    int g_other_end(int v, int i, int j) const {
        KempeChain ch = kempe_chain(phi, v, i, j);
        if (ch.shape != ChainShape::Path) fail("unexpected cycle chain");
        if (ch.vertices.size() == 1) return v;
        return ch.other_end(v);
    }

    bool try_direct(const std::string& label) {
        if (done) return true;
        if (!total_minus_e()) return false;
        ColorMask both = phi.missing(end3) & phi.missing(end4);
        if (!both) return false;
        assign(label + "/direct", end3, end4, lowest(both));
        done = true;
        return true;
    }

    // The workhorse linkage requirement: the designated edge's endpoints must
    // be (1,i)-linked; if not, a swap at the degree-3 endpoint finishes.
    bool req1(const std::string& label, int i) {
        if (done) return true;
        if (linked(phi, end4, end3, 1, i)) return false;
        swap_at(label + "/unlinked1" + std::to_string(i), end3, 1, i);
        expect(done, "unlinked finishing move failed");
        return true;
    }

    void do_normalize(const std::string& label) {
        expect(total_minus_e(), "coloring not total on G-e");
        ColorMask m3 = phi.missing(end3), m4 = phi.missing(end4);
        expect(__builtin_popcount(m3) == 2 && __builtin_popcount(m4) == 1,
               "endpoint degree conventions broken");
        int c = lowest(m4);
        int a = lowest(m3);
        int b = lowest(m3 & ~(ColorMask(1) << a));
        int d = 6 - a - b - c;
        std::vector<int> perm(4);
        perm[d] = 0;
        perm[c] = 1;
        perm[a] = 2;
        perm[b] = 3;
        bool identity = perm[0] == 0 && perm[1] == 1 && perm[2] == 2 && perm[3] == 3;
        if (!identity) permute(label + "/normalize", perm);
        expect(phi.seen(end3) == 0b0011u, "3-endpoint must see {0,1}");
        expect(phi.seen(end4) == 0b1101u, "4-endpoint must see {0,2,3}");
    }
};

// ---------------------------------------------------------------------------
// Configuration (a): roles v(4) z(3) w(4) x(3) y(3); e = vz.
// H-edges: vz, vw, vx, wx, wy.
// ---------------------------------------------------------------------------
class AExt final : public ExtBase {
public:
    using ExtBase::ExtBase;

protected:
    int va = -1, za = -1, wa = -1, xa = -1, ya = -1;
    int pv = -1, pw = -1, px = -1;  // vv', ww', xx'

    void rebind() {
        va = m.role("v");
        za = m.role("z");
        wa = m.role("w");
        xa = m.role("x");
        ya = m.role("y");
        pv = sole_pendant(va);
        pw = sole_pendant(wa);
        px = sole_pendant(xa);
    }

    void dispatch() override {
        rebind();
        int e0 = phi.edge_with_color(va, 0);
        if (e0 == pv)
            case1();
        else if (e0 == g.edge_index(va, xa))
            case2();
        else if (e0 == g.edge_index(va, wa))
            case3();
        else
            fail("v's 0-edge misplaced");
    }

    void case1() {
        const std::string L = "L2.C1";
        if (colv(va, wa) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(va, wa) == 2 && colv(va, xa) == 3, "case 1 arrangement");
        if (colv(wa, xa) == 0) {
            if (req1(L + ".wx0", 3)) return;
            expect(pcol(px) == 1, "xx' forced to 1");
            swap_at(L + ".wx0/12x", xa, 1, 2);
            if (done) return;
            if (req1(L + ".wx0", 3)) return;
            fail("L2.C1 wx=0 must finish");
        }
        expect(colv(wa, xa) == 1, "wx in {0,1}");
        if (req1(L, 2)) return;
        expect(pcol(px) == 2, "xx' forced to 2");
        if (colv(wa, ya) == 0) {
            expect(pcol(pw) == 3, "ww' forced to 3");
            if (!sees(ya, 1)) {
                swap_at(L + ".wy0/01y", ya, 0, 1);
                if (done) return;
                if (req1(L + ".wy0", 3)) return;
                fail("L2.C1 wy=0 (y misses 1) must finish");
            }
            int tbar = !sees(ya, 2) ? 2 : 3;
            expect(!sees(ya, tbar), "y misses one of 2,3");
            swap_at(L + ".wy0/1ty", ya, 1, tbar);
            if (done) return;
            expect(!sees(ya, 1) && colv(wa, ya) == 0 && colv(wa, xa) == 1,
                   "frame after the (1,t)-swap at y");
            swap_at(L + ".wy0/01y", ya, 0, 1);
            if (done) return;
            if (req1(L + ".wy0", 3)) return;
            fail("L2.C1 wy=0 must finish");
        }
        expect(colv(wa, ya) == 3 && pcol(pw) == 0, "wy=3, ww'=0");
        if (req1(L + ".wy3", 3)) return;
        expect(sees(ya, 1), "y must see 1");
        if (!sees(ya, 2)) {
            swap_at(L + ".wy3/12y", ya, 1, 2);
            if (done) return;
            if (req1(L + ".wy3", 3)) return;
            fail("L2.C1 y-misses-2 must finish");
        }
        expect(phi.seen(ya) == 0b1110u, "y sees {1,2,3}");
        KempeChain P = kempe_chain(phi, ya, 0, 1);
        if (P.contains_edge(pw)) {
            do_swap(L + ".Pa", P, false);
            if (done) return;
            if (req1(L + ".Pa", 3)) return;
            fail("L2.C1 branch (a) must finish");
        }
        if (P.contains_edge(pv)) {
            do_swap(L + ".Pb", P, false);
            if (done) return;
            unassign(L + ".Pb", va, xa);
            assign(L + ".Pb", va, xa, 0);
            assign(L + ".Pb", va, za, 3);
            done = true;
            return;
        }
        do_swap(L + ".Pinf", P, false);
        if (done) return;
        if (req1(L + ".Pinf", 3)) return;
        fail("L2.C1 branch (inf) must finish");
    }

    // Extension used throughout Case 2: when no pendant of H carries 3 and
    // vv', ww', xx' use distinct colors, the H-edges recolor directly.
    void observation(const std::string& L) {
        int a = pcol(pv), b = pcol(pw), c = pcol(px);
        expect(a != b && b != c && a != c && a < 3 && b < 3 && c < 3,
               "observation: vv',ww',xx' distinct below 3");
        for (int rv : {za, ya})
            for (auto [w2, idx] : g.inc(rv)) {
                (void)w2;
                if (!hedge[idx] && phi.color(idx) != -1)
                    expect(phi.color(idx) != 3, "observation: a pendant carries 3");
            }
        auto eta = [](int p, int q) { return 3 - p - q; };
        unassign(L, va, wa);
        unassign(L, wa, xa);
        unassign(L, va, xa);
        unassign(L, wa, ya);
        assign(L, va, za, 3);
        assign(L, wa, ya, 3);
        assign(L, va, wa, eta(a, b));
        assign(L, wa, xa, eta(b, c));
        assign(L, va, xa, eta(a, c));
        done = true;
    }

    void case2() {
        const std::string L = "L2.C2";
        if (pcol(pv) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(pcol(pv) == 2 && colv(va, wa) == 3, "case 2 arrangement");
        if (colv(wa, xa) == 1) {
            if (req1(L + ".wx1", 3)) return;
            expect(pcol(px) == 3, "xx'=3 when wx=1");
            swap_at(L + ".wx1/12x", xa, 1, 2);
            if (done) return;
        }
        expect(colv(wa, xa) == 2, "wx=2");
        if (pcol(px) == 1) {
            swap_at(L + "/13x", xa, 1, 3);
            if (done) return;
        }
        expect(pcol(px) == 3, "xx'=3");
        if (colv(wa, ya) == 0) {
            swap_at(L + "/01w", wa, 0, 1);
            if (done) return;
        }
        expect(pcol(pw) == 0 && colv(wa, ya) == 1, "ww'=0, wy=1");
        if (req1(L, 3)) return;
        expect(sees(ya, 3), "y sees 3");
        if (!sees(ya, 2)) {
            swap_at(L + ".ym2/13x", xa, 1, 3);
            if (done) return;
            swap_at(L + ".ym2/12y", ya, 1, 2);
            if (done) return;
            if (req1(L + ".ym2", 3)) return;
            fail("L2.C2 y-misses-2 must finish");
        }
        expect(missm(ya) == 0b0001u, "y misses exactly 0");
        swap_at(L + "/01y", ya, 0, 1);
        if (done) return;
        expect(colv(wa, ya) == 0 && pcol(pw) == 1, "wy=0, ww'=1 after the swap");
        if (!sees(xa, 1)) {
            swap_at(L + "/13x2", xa, 1, 3);
            if (done) return;
        }
        if (!sees(ya, 1)) {
            swap_at(L + "/13y", ya, 1, 3);
            if (done) return;
        }
        expect(colv(va, xa) == 0 && colv(va, wa) == 3 && pcol(pv) == 2 && colv(wa, xa) == 2 &&
                   colv(wa, ya) == 0 && pcol(pw) == 1 && pcol(px) == 1,
               "the lemma's first Case 2 frame");

        // (0,1)-chains in G-E(H) at w, x, y.
        if (!in_roles(sub_other_end(wa, 0, 1))) {
            swap_sub(L + ".obs-w", wa, 0, 1);
            if (done) return;
            observation(L + ".obs-w");
            return;
        }
        if (!in_roles(sub_other_end(xa, 0, 1))) {
            swap_sub(L + ".obs-x", xa, 0, 1);
            if (done) return;
            observation(L + ".obs-x");
            return;
        }
        expect(!in_roles(sub_other_end(ya, 0, 1)), "the (0,1)-chain at y leaves H");
        unassign(L + ".figb", wa, ya);
        unassign(L + ".figb", va, xa);
        unassign(L + ".figb", va, wa);
        swap_sub(L + ".figb", ya, 0, 1, false);
        assign(L + ".figb", wa, ya, 3);
        assign(L + ".figb", va, xa, 3);
        assign(L + ".figb", va, wa, 0);

        // (1,2)-chains in G-E(H) at v, w, x, y, z; P is the chain at w.
        int ew = sub_other_end(wa, 1, 2);
        if (ew == xa || ew == va) {
            unassign(L + ".P", wa, xa);
            unassign(L + ".P", wa, ya);
            unassign(L + ".P", va, xa);
            swap_sub(L + ".P", wa, 1, 2, false);
            assign(L + ".P", wa, ya, 1);
            assign(L + ".P", wa, xa, 3);
            assign(L + ".P", va, xa, ew == xa ? 1 : 2);
            assign(L + ".P", va, za, 3);
            done = true;
            return;
        }
        if (ew == ya) {
            unassign(L + ".Py", wa, xa);
            unassign(L + ".Py", va, wa);
            swap_sub(L + ".Py", wa, 1, 2, false);
            assign(L + ".Py", wa, xa, 0);
            assign(L + ".Py", va, wa, 1);
            int q = sub_other_end(wa, 0, 2);
            if (q == ya || q == za) {
                swap_sub(L + ".Py.obs", wa, 0, 2);
                if (done) return;
                observation(L + ".Py.obs");
                return;
            }
            expect(q == va, "Q must end at v");
            if (sub_other_end(ya, 0, 2) == za) {
                swap_sub(L + ".Py.z", ya, 0, 2);
                if (done) return;
            } else {
                expect(!in_roles(sub_other_end(ya, 0, 2)), "y's (0,2)-chain pairs with z or leaves");
                expect(!in_roles(sub_other_end(za, 0, 2)), "z's (0,2)-chain leaves");
                swap_sub(L + ".Py.z", za, 0, 2);
                if (done) return;
            }
            assign(L + ".Py.z", va, za, 0);
            done = true;
            return;
        }
        if (ew == za) {
            unassign(L + ".Pz", wa, xa);
            unassign(L + ".Pz", va, wa);
            swap_sub(L + ".Pz", wa, 1, 2, false);
            assign(L + ".Pz", wa, xa, 0);
            assign(L + ".Pz", va, wa, 1);
            if (!in_roles(sub_other_end(za, 0, 1))) {
                swap_sub(L + ".Pz.z", za, 0, 1);
                if (done) return;
                assign(L + ".Pz.z", va, za, 0);
                done = true;
                return;
            }
            if (!in_roles(sub_other_end(xa, 0, 1))) {
                unassign(L + ".Pz.x", wa, xa);
                unassign(L + ".Pz.x", va, wa);
                swap_sub(L + ".Pz.x", xa, 0, 1, false);
                assign(L + ".Pz.x", wa, xa, 1);
                assign(L + ".Pz.x", va, wa, 0);
                assign(L + ".Pz.x", va, za, 1);
                done = true;
                return;
            }
            expect(!in_roles(sub_other_end(ya, 0, 1)), "a (0,1)-chain leaves H");
            unassign(L + ".Pz.y", wa, ya);
            unassign(L + ".Pz.y", wa, xa);
            unassign(L + ".Pz.y", va, xa);
            swap_sub(L + ".Pz.y", ya, 0, 1, false);
            assign(L + ".Pz.y", wa, ya, 0);
            assign(L + ".Pz.y", wa, xa, 3);
            assign(L + ".Pz.y", va, xa, 0);
            assign(L + ".Pz.y", va, za, 3);
            done = true;
            return;
        }
        expect(!in_roles(ew), "P endpoint accounted for");
        unassign(L + ".Pinf", wa, xa);
        unassign(L + ".Pinf", va, wa);
        swap_sub(L + ".Pinf", wa, 1, 2, false);
        assign(L + ".Pinf", wa, xa, 0);
        assign(L + ".Pinf", va, wa, 1);
        if (!in_roles(sub_other_end(va, 0, 2))) {
            swap_sub(L + ".Pinf.v", va, 0, 2);
            if (done) return;
            observation(L + ".Pinf.v");
            return;
        }
        if (!in_roles(sub_other_end(wa, 0, 2))) {
            swap_sub(L + ".Pinf.w", wa, 0, 2);
            if (done) return;
            observation(L + ".Pinf.w");
            return;
        }
        expect(!in_roles(sub_other_end(za, 0, 2)), "a (0,2)-chain leaves H");
        swap_sub(L + ".Pinf.z", za, 0, 2);
        if (done) return;
        assign(L + ".Pinf.z", va, za, 0);
        done = true;
    }

    void case3() {
        const std::string L = "L2.C3";
        if (pcol(pv) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(pcol(pv) == 2 && colv(va, xa) == 3, "case 3 arrangement");
        if (colv(wa, ya) == 3) {
            case3_wy3(L + ".1");
            return;
        }
        expect(pcol(pw) == 3, "w's 3 sits on ww'");
        case3_ww3(L + ".2");
    }

    void case3_wy3(const std::string& L) {
        if (!sees(ya, 0)) {
            swap_at(L + "/03x", xa, 0, 3);
            return;  // redispatch: v's 0 moved onto vx
        }
        if (req1(L, 2)) return;
        if (!sees(ya, 2)) {
            swap_at(L + "/12y", ya, 1, 2);
            if (done) return;
        }
        expect(phi.seen(ya) == 0b1101u, "y sees {0,2,3}");
        if (req1(L, 3)) return;
        expect(colv(wa, xa) == 2 && pcol(pw) == 1 && pcol(px) == 1, "forced colors at w,x");
        int evw = g.edge_index(va, wa);
        KempeChain Px = kempe_chain(phi, xa, 0, 1);
        if (!Px.contains_edge(evw)) {
            do_swap(L + "/01x", Px, false);
            if (done) return;
            if (req1(L, 3)) return;
            fail("L2.C3.1 x-side swap must finish");
        }
        KempeChain Py = kempe_chain(phi, ya, 0, 1);
        expect(!Py.contains_edge(evw), "vw cannot lie on both (0,1)-chains");
        do_swap(L + "/01y", Py, false);
        if (done) return;
        expect(!sees(ya, 0), "y misses 0 now");
        swap_at(L + "/03x", xa, 0, 3);
        // redispatch
    }

    void case3_ww3(const std::string& L) {
        if (colv(wa, xa) == 2) {
            // wy carries 1
            expect(colv(wa, ya) == 1, "wy=1");
            if (req1(L + "a", 3)) return;
            expect(pcol(px) == 1, "xx'=1");
            if (!sees(ya, 3)) {
                swap_at(L + "a/13y", ya, 1, 3);
                return;  // redispatch: wy now carries 3
            }
            if (!linked(phi, va, za, 0, 2)) {
                swap_at(L + "a/02x", xa, 0, 2);
                return;  // redispatch: v's 0 moved onto vv'
            }
            if (!sees(ya, 2)) {
                swap_at(L + "a/02y", ya, 0, 2);
                if (done) return;
            }
            expect(phi.seen(ya) == 0b1110u, "y sees {1,2,3}");
            swap_at(L + "a/03y", ya, 0, 3);
            if (done) return;
            if (colv(va, wa) == 0 && colv(wa, ya) == 1) {
                expect(!sees(ya, 3), "y misses 3 after the (0,3)-swap");
                swap_at(L + "a/13y", ya, 1, 3);
                return;  // redispatch
            }
            return;  // chain moved the frame; redispatch sorts it out
        }
        expect(colv(wa, xa) == 1 && colv(wa, ya) == 2, "wx=1, wy=2");
        if (pcol(px) == 0) {
            swap_at(L + "b/12x", xa, 1, 2);
            if (done) return;
            if (req1(L + "b", 3)) return;
            fail("L2.C3.2 xx'=0 must finish");
        }
        expect(pcol(px) == 2, "xx'=2");
        if (!sees(ya, 0)) {
            if (!linked(phi, ya, za, 0, 2)) {
                swap_at(L + "b/02y", ya, 0, 2);
                return;  // redispatch: v's 0 moved onto vv'
            }
            swap_at(L + "b/02x", xa, 0, 2);
            if (done) return;
            swap_at(L + "b/12x", xa, 1, 2);
            if (done) return;
            if (req1(L + "b", 3)) return;
            fail("L2.C3.2 y-misses-0 must finish");
        }
        if (sees(ya, 1)) {
            swap_at(L + "b/13y", ya, 1, 3);
            if (done) return;
            if (colv(va, wa) != 0 || colv(wa, xa) != 1 || colv(wa, ya) != 2) return;
        }
        expect(sees(ya, 3) && sees(ya, 0) && colv(wa, ya) == 2, "y sees {0,2,3}");
        swap_at(L + "b/12y", ya, 1, 2);
        // redispatch: wx now carries 2
    }
};

// ---------------------------------------------------------------------------
// Configuration (b): roles u(3) v(4) w(3) x(4) y(4) z(3); e = ux.
// H-edges: ux, uv, vw, wx, xy, yz.
// ---------------------------------------------------------------------------
class BExt final : public ExtBase {
public:
    using ExtBase::ExtBase;

protected:
    int ub = -1, vb = -1, wb = -1, xb = -1, yb = -1, zb = -1;
    int pu = -1, pw = -1, px = -1;  // uu', ww', xx'

    void rebind() {
        ub = m.role("u");
        vb = m.role("v");
        wb = m.role("w");
        xb = m.role("x");
        yb = m.role("y");
        zb = m.role("z");
        pu = sole_pendant(ub);
        pw = sole_pendant(wb);
        px = sole_pendant(xb);
    }

    void dispatch() override {
        rebind();
        int e0 = phi.edge_with_color(ub, 0);
        if (e0 == pu)
            case1();
        else if (e0 == g.edge_index(ub, vb))
            case2();
        else
            fail("u's 0-edge misplaced");
    }

    // --- shared: handlers for "w sees 0", Case 1 flavor -----------------
    void w0_vw(const std::string& L) {
        if (colv(wb, xb) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(wb, xb) == 2, "wx in {2,3}");
        if (req1(L, 2)) return;
        expect(pcol(pw) == 1, "ww'=1");
        swap_at(L + "/13w", wb, 1, 3);
        if (done) return;
        if (req1(L, 2)) return;
        fail("vw=0 handler must finish");
    }
    void w0_wx(const std::string& L) {
        if (colv(vb, wb) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(vb, wb) == 2, "vw in {2,3}");
        if (req1(L, 2)) return;
        expect(pcol(pw) == 1, "ww'=1");
        swap_at(L + "/13w", wb, 1, 3);
        if (done) return;
        if (req1(L, 2)) return;
        fail("wx=0 handler must finish");
    }
    void w_sees0_dispatch(const std::string& L) {
        if (colv(vb, wb) == 0)
            w0_vw(L + ".w0vw");
        else if (colv(wb, xb) == 0)
            w0_wx(L + ".w0wx");
        else {
            expect(pcol(pw) == 0, "w's 0 accounted for");
            if (req1(L + ".w0ww", 2)) return;
            fail("ww'=0 handler must finish");
        }
    }

    // Case-1 frame requirements; true when the extension finished (or was
    // handed to another branch).
    bool c1_frames(const std::string& L) {
        if (req1(L, 2) || req1(L, 3)) return true;
        if (!linked(phi, ub, xb, 0, 3)) {
            swap_at(L + "/03x", xb, 0, 3);
            if (done) return true;
            expect(sees(wb, 0), "the x-side (0,3)-swap hands 0 to w");
            w_sees0_dispatch(L);
            return true;
        }
        if (!linked(phi, ub, wb, 0, 2)) {
            swap_at(L + "/02w", wb, 0, 2);
            if (done) return true;
            expect(colv(vb, wb) == 0, "the w-side (0,2)-swap recolors vw");
            w0_vw(L + ".w0vw");
            return true;
        }
        return false;
    }

    void case1() {
        const std::string L = "L3.C1";
        expect(colv(ub, vb) == 1, "uv=1");
        if (colv(vb, wb) == 0) {
            w0_vw(L + ".w0vw");
            return;
        }
        if (colv(wb, xb) == 0) {
            w0_wx(L + ".w0wx");
            return;
        }
        if (pcol(pw) == 0) {
            if (req1(L + ".w0ww", 2)) return;
            fail("ww'=0 must finish");
        }
        if (colv(vb, wb) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(vb, wb) == 2 && colv(wb, xb) == 3 && pcol(pw) == 1, "w's colors fixed");

        if (pcol(px) == 2 && colv(xb, yb) == 0) {
            if (!machine1(L + ".sm1")) return;
        }
        expect(pcol(px) == 0 && colv(xb, yb) == 2, "xx'=0 and xy=2");
        if (!machine2(L + ".sm2")) return;
        expect(colv(yb, zb) == 3 && !sees(zb, 0), "the lemma's Case 1 figure");
        tail_fig(L + ".tail");
    }

    // Drives (i;j) = (phi(yz); missing at z) to (2;0), then hands xx'/xy
    // their target colors with the closing (0,2)-swap at z.
    bool machine1(const std::string& L) {
        for (int it = 0; it < 12; ++it) {
            if (c1_frames(L)) return false;
            if (done) return false;
            if (pcol(px) == 0 && colv(xb, yb) == 2) return true;
            int i = colv(yb, zb);
            ColorMask mz = missm(zb);
            expect(__builtin_popcount(mz) == 1, "z misses exactly one color");
            int j = lowest(mz);
            int a = -1, b = -1;
            if (i == 2 && j == 0) {
                swap_at(L + "/02z-close", zb, 0, 2);
                if (done) return false;
                expect(pcol(px) == 0 && colv(xb, yb) == 2, "closing swap reaches the goal");
                return true;
            } else if (i == 3 && j == 0) {
                a = 0; b = 2;
            } else if (i == 3 && j == 2) {
                a = 1; b = 2;
            } else if (i == 3 && j == 1) {
                a = 1; b = 3;
            } else if (i == 1 && j == 3) {
                a = 0; b = 3;
            } else if (i == 1 && j == 0) {
                a = 0; b = 2;
            } else if (i == 1 && j == 2) {
                a = 1; b = 2;
            } else if (i == 2 && j == 1) {
                a = 1; b = 3;
            } else if (i == 2 && j == 3) {
                a = 0; b = 3;
            } else {
                fail("machine1: unreachable state");
            }
            swap_at(L + "/sm", zb, a, b);
            if (done) return false;
        }
        fail("machine1 did not converge");
    }

    bool machine2(const std::string& L) {
        for (int it = 0; it < 12; ++it) {
            if (c1_frames(L)) return false;
            if (done) return false;
            int i = colv(yb, zb);
            int j = lowest(missm(zb));
            if (i == 3 && j == 0) return true;
            if (i == 1 && j == 2) {
                swap_at(L + "/12z-close", zb, 1, 2);
                if (done) return false;
                expect(colv(xb, yb) == 1 && !sees(xb, 2), "chain z-y ends at x");
                assign(L + "/12z-close", ub, xb, 2);
                done = true;
                return false;
            }
            if (i == 3 && j == 2) {
                swap_at(L + "/02z", zb, 0, 2);
                if (done) return false;
                if (colv(xb, yb) == 0 && pcol(px) == 2) {
                    // the swap traded xx'/xy back; the (0,3)-chain at z now
                    // ends at w
                    swap_at(L + "/03z", zb, 0, 3);
                    if (done) return false;
                    expect(colv(wb, xb) == 0, "the (0,3)-swap hands 0 to w");
                    w_sees0_dispatch(L);
                    return false;
                }
                continue;
            }
            int a = -1, b = -1;
            if (i == 0 && j == 2) {
                a = 1; b = 2;
            } else if (i == 0 && j == 1) {
                a = 1; b = 3;
            } else if (i == 0 && j == 3) {
                a = 0; b = 3;
            } else if (i == 1 && j == 0) {
                a = 0; b = 3;
            } else if (i == 1 && j == 3) {
                a = 1; b = 3;
            } else if (i == 3 && j == 1) {
                a = 1; b = 2;
            } else {
                fail("machine2: unreachable state");
            }
            swap_at(L + "/sm", zb, a, b);
            if (done) return false;
        }
        fail("machine2 did not converge");
    }

    void tail_fig(const std::string& L) {
        expect(pcol(pu) == 0 && colv(ub, vb) == 1 && colv(vb, wb) == 2 && pcol(pw) == 1 &&
                   colv(wb, xb) == 3 && pcol(px) == 0 && colv(xb, yb) == 2 && colv(yb, zb) == 3,
               "Case 1 figure frame");
        // (0,1)-chains in G-E(H) at u, v, w, x, z.
        if (!linked(phi, wb, xb, 0, 1)) {
            swap_at(L + "/01w", wb, 0, 1);
            if (done) return;
            if (req1(L + "/01w", 2)) return;
            fail("w-x (0,1)-unlinked must finish");
        }
        int ev = sub_other_end(vb, 0, 1);
        if (!in_roles(ev) || ev == zb) {
            unassign(L + "/01v", vb, wb);
            unassign(L + "/01v", ub, vb);
            swap_sub(L + "/01v", vb, 0, 1, false);
            assign(L + "/01v", vb, wb, 0);
            assign(L + "/01v", ub, vb, 2);
            assign(L + "/01v", ub, xb, 1);
            done = true;
            return;
        }
        expect(!in_roles(sub_other_end(zb, 0, 1)), "z's (0,1)-chain leaves H");
        swap_sub(L + "/01z", zb, 0, 1);
        if (done) return;
        // (1,2)-chains at w, y, z.
        int ew = sub_other_end(wb, 1, 2);
        if (!in_roles(ew) || ew == zb) {
            unassign(L + "/12w", vb, wb);
            unassign(L + "/12w", ub, vb);
            swap_sub(L + "/12w", wb, 1, 2, false);
            assign(L + "/12w", wb, vb, 1);
            assign(L + "/12w", vb, ub, 2);
            assign(L + "/12w", ub, xb, 1);
            done = true;
            return;
        }
        expect(ew == yb, "w's (1,2)-chain ends at y");
        expect(!in_roles(sub_other_end(zb, 1, 2)), "z's (1,2)-chain leaves H");
        swap_sub(L + "/12z", zb, 1, 2);
        if (done) return;
        // (1,3)-chains at v, w, y, z.
        int sz = sub_other_end(zb, 1, 3);
        int sy = sub_other_end(yb, 1, 3);
        if (sz == vb || sy == vb) {
            if (req1(L + "/13", 3)) return;
            fail("a (1,3)-chain into v implies unlinkage");
        }
        if (sz == yb || (!in_roles(sz) && !in_roles(sy))) {
            bool paired = sz == yb;
            unassign(L + "/13zy", yb, zb);
            unassign(L + "/13zy", xb, yb);
            swap_sub(L + "/13zy", zb, 1, 3, false);
            if (!paired) swap_sub(L + "/13zy", yb, 1, 3, false);
            assign(L + "/13zy", zb, yb, 2);
            assign(L + "/13zy", yb, xb, 1);
            assign(L + "/13zy", xb, ub, 2);
            done = true;
            return;
        }
        if (sz == wb) {
            unassign(L + "/13zw", yb, zb);
            unassign(L + "/13zw", xb, yb);
            unassign(L + "/13zw", wb, xb);
            swap_sub(L + "/13zw", zb, 1, 3, false);
            assign(L + "/13zw", zb, yb, 2);
            assign(L + "/13zw", yb, xb, 3);
            assign(L + "/13zw", xb, wb, 1);
            assign(L + "/13zw", xb, ub, 2);
            done = true;
            return;
        }
        expect(sy == wb, "remaining pairing: y with w");
        unassign(L + "/13yw", yb, zb);
        unassign(L + "/13yw", xb, yb);
        unassign(L + "/13yw", wb, xb);
        unassign(L + "/13yw", vb, wb);
        unassign(L + "/13yw", ub, vb);
        swap_sub(L + "/13yw", yb, 1, 3, false);
        assign(L + "/13yw", zb, yb, 2);
        assign(L + "/13yw", yb, xb, 1);
        assign(L + "/13yw", xb, wb, 2);
        assign(L + "/13yw", wb, vb, 1);
        assign(L + "/13yw", vb, ub, 2);
        assign(L + "/13yw", ub, xb, 3);
        done = true;
    }

    // --- Case 2 ----------------------------------------------------------
    void c2_wx0(const std::string& L) {
        if (sees(wb, 1)) {
            int t = !sees(wb, 2) ? 2 : 3;
            expect(!sees(wb, t), "w misses one of 2,3");
            swap_at(L + "/1tw", wb, 1, t);
            if (done) return;
        }
        expect(!sees(wb, 1), "w misses 1");
        expect(!sees(xb, 1), "x misses 1");
        unassign(L + "/wx1", wb, xb);
        assign(L + "/wx1", wb, xb, 1);
        // redispatch renormalizes into Case 1
    }

    void c2_roleswap(const std::string& L) {
        expect(colv(wb, xb) == 2, "wx=2 before the role swap");
        unassign(L, wb, xb);
        assign(L, ub, xb, 2);
        int u0 = m.role("u"), w0 = m.role("w");
        m.set_role("u", w0);
        m.set_role("w", u0);
        bind();
        // redispatch: the dispatcher renormalizes with w in u's place
    }

    bool c2_frames(const std::string& L) {
        if (req1(L, 2) || req1(L, 3)) return true;
        if (!linked(phi, ub, xb, 0, 1)) {
            swap_at(L + "/01u", ub, 0, 1);
            return true;  // u's 0 moved onto uu': Case 1 after redispatch
        }
        if (!linked(phi, wb, xb, 0, 1)) {
            swap_at(L + "/01w", wb, 0, 1);
            if (done) return true;
            if (req1(L + "/01w", 2)) return true;
            return true;  // redispatch
        }
        if (!linked(phi, ub, wb, 0, 2)) {
            swap_at(L + "/02w", wb, 0, 2);
            if (done) return true;
            if (colv(wb, xb) == 0) {
                c2_wx0(L + ".wx0");
                return true;
            }
            return true;  // redispatch
        }
        return false;
    }

    void case2() {
        const std::string L = "L3.C2";
        expect(pcol(pu) == 1, "uu'=1");
        if (colv(wb, xb) == 0) {
            c2_wx0(L + ".wx0");
            return;
        }
        if (colv(wb, xb) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(wb, xb) == 2, "wx=2");
        if (sees(wb, 0)) {
            expect(pcol(pw) == 0, "w's 0 sits on ww'");
            if (colv(vb, wb) == 1) {
                swap_at(L + ".w0/13w", wb, 1, 3);
                if (done) return;
            }
            expect(!sees(wb, 1), "w misses 1");
            if (req1(L + ".w0", 2)) return;
            fail("Case 2 w-sees-0 must finish");
        }
        if (colv(vb, wb) == 1) {
            expect(pcol(pw) == 3, "vw=1 forces ww'=3");
            c2_roleswap(L + ".uw");
            return;
        }
        expect(colv(vb, wb) == 3 && pcol(pw) == 1, "vw=3, ww'=1");
        if (colv(xb, yb) == 3) {
            swap_at(L + "/03x", xb, 0, 3);
            if (done) return;
            if (colv(ub, vb) != 0 || colv(vb, wb) != 3) return;  // redispatch
        }
        expect(colv(xb, yb) == 0 && pcol(px) == 3, "xy=0, xx'=3");
        machine_c2(L + ".sm");
    }

    void machine_c2(const std::string& L) {
        for (int it = 0; it < 20; ++it) {
            if (c2_frames(L)) return;
            if (done) return;
            if (colv(vb, wb) == 1 && pcol(pw) == 3) {
                c2_roleswap(L + ".uw");
                return;
            }
            expect(colv(ub, vb) == 0 && pcol(pu) == 1 && colv(vb, wb) == 3 && pcol(pw) == 1 &&
                       colv(wb, xb) == 2,
                   "case-2 machine frame");
            int i = colv(yb, zb);
            int j = lowest(missm(zb));
            if (i == 2 && j == 0) {
                if (colv(xb, yb) == 3) {
                    swap_at(L + "/03x-restore", xb, 0, 3);
                    if (done) return;
                    if (colv(ub, vb) != 0 || colv(vb, wb) != 3) return;  // redispatch
                    expect(colv(xb, yb) == 0 && pcol(px) == 3, "figure restored");
                }
                expect(colv(ub, vb) == 0 && pcol(pu) == 1 && colv(vb, wb) == 3 &&
                           pcol(pw) == 1 && colv(wb, xb) == 2 && colv(xb, yb) == 0,
                       "the lemma's Case 2 figure");
                swap_at(L + "/02z-close", zb, 0, 2);
                if (done) return;
                expect(colv(wb, xb) == 0, "closing swap hands 0 to w");
                c2_wx0(L + ".fin");
                return;
            }
            if (i == 1 && j == 3) {
                swap_at(L + "/03x-spec", xb, 0, 3);
                if (done) return;
                if (colv(ub, vb) != 0 || colv(vb, wb) != 3) return;  // redispatch
                expect(colv(xb, yb) == 3 && pcol(px) == 0, "x traded xy/xx'");
                if (!(colv(yb, zb) == 1 && !sees(zb, 0))) {
                    swap_at(L + "/03z-spec", zb, 0, 3);
                    if (done) return;
                    if (colv(ub, vb) != 0 || colv(vb, wb) != 3) return;  // redispatch
                }
                expect(colv(yb, zb) == 1 && !sees(zb, 0), "reached (1;0)");
                continue;
            }
            int a = -1, b = -1;
            if (i == 1 && j == 0) {
                a = 0; b = 2;
            } else if (i == 1 && j == 2) {
                a = 1; b = 2;
            } else if (i == 2 && j == 1) {
                a = 0; b = 1;
            } else if (i == 2 && j == 3) {
                a = 1; b = 3;
            } else if (i == 3 && j == 2) {
                a = 0; b = 2;
            } else if (i == 3 && j == 0) {
                a = 0; b = 1;
            } else if (i == 3 && j == 1) {
                a = 1; b = 3;
            } else {
                fail("case-2 machine: unreachable state");
            }
            swap_at(L + "/sm", zb, a, b);
            if (done) return;
        }
        fail("case-2 machine did not converge");
    }
};

// ---------------------------------------------------------------------------
// Configuration (c): roles s(4) t(3) u(3) v(4) w(4) x(3) y(3) z(3); e = st.
// H-edges: st, su, sv, sw, vx, vy, wz.
// ---------------------------------------------------------------------------
class CExt final : public ExtBase {
public:
    using ExtBase::ExtBase;

protected:
    int sc = -1, tc = -1, uc = -1, vc = -1, wc = -1, xc = -1, yc = -1, zc = -1;
    int pvc = -1;  // vv'

    void rebind() {
        sc = m.role("s");
        tc = m.role("t");
        uc = m.role("u");
        vc = m.role("v");
        wc = m.role("w");
        xc = m.role("x");
        yc = m.role("y");
        zc = m.role("z");
        pvc = sole_pendant(vc);
    }

    void dispatch() override {
        rebind();
        if (colv(sc, uc) == 0)
            case1();
        else
            case2();
    }

    void roleswap_xy(const std::string&) {
        int x0 = m.role("x"), y0 = m.role("y");
        m.set_role("x", y0);
        m.set_role("y", x0);
        bind();
        rebind();
    }

    void dispatch_to_A(const std::string&, const ConfigMatch& am) {
        expect(match_valid(g, am), "constructed kind-A instance invalid");
        AExt sub(g, am, phi, ctx, steps);
        phi = sub.run();
        done = true;
    }

    int second_3_neighbor_of_w() const {
        int found = -1;
        for (auto [q, idx] : g.inc(wc)) {
            (void)idx;
            if (q == sc || q == zc) continue;
            if (g.degree(q) == 3) {
                if (found >= 0) fail("w has more than two 3-neighbors");
                found = q;
            }
        }
        if (found < 0) fail("w lacks a second 3-neighbor (input not in H_4?)");
        return found;
    }

    // ---- Case 1: 0 on su -------------------------------------------------
    void case1() {
        const std::string L = "L4.C1";
        if (colv(sc, vc) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(sc, vc) == 2 && colv(sc, wc) == 3, "case 1 arrangement");
        // u missing 2 via (1,2)- and (1,3)-swaps at u
        if (sees(uc, 2)) {
            if (!sees(uc, 3)) {
                if (req1(L, 3)) return;
                swap_at(L + "/13u", uc, 1, 3);
                if (done) return;
            }
            if (sees(uc, 2)) {
                expect(!sees(uc, 1), "u misses 1 before the (1,2)-swap");
                if (req1(L, 2)) return;
                swap_at(L + "/12u", uc, 1, 2);
                if (done) return;
            }
        }
        expect(!sees(uc, 2), "u misses 2");

        if (colv(vc, xc) != 0) {
            if (colv(vc, yc) == 0) {
                roleswap_xy(L + "/xy");
            } else {
                if (colv(vc, xc) == 1) roleswap_xy(L + "/xy");
                expect(colv(vc, xc) == 3 && colv(vc, yc) == 1 && pcol(pvc) == 0,
                       "vx=3, vy=1, vv'=0");
                if (req1(L + ".vx3", 2)) return;
                expect(sees(yc, 2), "y sees 2");
                if (!linked(phi, uc, tc, 0, 2)) {
                    swap_at(L + ".vx3/02u", uc, 0, 2);
                    if (done) return;
                    expect(colv(sc, uc) != 0, "su freed from 0");
                    return;  // redispatch into Case 2
                }
                if (!sees(yc, 0)) {
                    swap_at(L + ".vx3/02y", yc, 0, 2);
                    if (done) return;
                    if (colv(sc, uc) != 0) return;  // redispatch into Case 2
                    if (req1(L + ".vx3", 2)) return;
                    fail("y-misses-0 must finish");
                }
                swap_at(L + ".vx3/13y", yc, 1, 3);
                if (done) return;
                expect(colv(vc, yc) == 3 && colv(vc, xc) == 1, "vy and vx traded");
                if (req1(L + ".vx3b", 2)) return;
                expect(sees(xc, 2), "x sees 2");
                if (!sees(xc, 0)) {
                    swap_at(L + ".vx3b/02x", xc, 0, 2);
                    if (done) return;
                    if (colv(sc, uc) != 0) return;
                    if (req1(L + ".vx3b", 2)) return;
                    fail("x-misses-0 must finish");
                }
                if (req1(L + ".vx3c", 2)) return;
                swap_at(L + ".vx3c/13x", xc, 1, 3);
                if (done) return;
                if (req1(L + ".vx3c", 2)) return;
                fail("the x-v-y trade must finish");
            }
        }

        if (colv(vc, yc) != 1) {
            expect(colv(vc, yc) == 3 && pcol(pvc) == 1, "vy=3, vv'=1");
            if (!sees(xc, 2)) {
                swap_at(L + ".vy3/02x", xc, 0, 2);
                if (done) return;
                expect(colv(sc, uc) != 0, "chain x-v-s-u frees su");
                return;  // redispatch into Case 2
            }
            if (sees(xc, 3)) {
                swap_at(L + ".vy3/13x", xc, 1, 3);
                if (done) return;
            }
            if (colv(vc, yc) != 1) {
                if (!sees(yc, 1)) {
                    swap_at(L + ".vy3/13y", yc, 1, 3);
                    if (done) return;
                    expect(colv(vc, yc) == 1, "vy settles to 1");
                } else {
                    if (sees(yc, 0)) {
                        swap_at(L + ".vy3/02y", yc, 0, 2);
                        if (done) return;
                        if (colv(sc, uc) != 0) return;  // redispatch into Case 2
                    }
                    expect(!sees(yc, 0), "y misses 0");
                    if (!linked(phi, uc, tc, 0, 2)) {
                        swap_at(L + ".vy3/02u", uc, 0, 2);
                        if (done) return;
                        expect(colv(sc, uc) != 0, "su freed from 0");
                        return;
                    }
                    swap_at(L + ".vy3/03x", xc, 0, 3);
                    if (done) return;
                    expect(!linked(phi, uc, tc, 0, 2), "the x-v-y trade cuts u-t");
                    swap_at(L + ".vy3/02u", uc, 0, 2);
                    if (done) return;
                    expect(colv(sc, uc) != 0, "su freed from 0");
                    return;
                }
            }
        }

        expect(colv(vc, xc) == 0 && colv(vc, yc) == 1 && pcol(pvc) == 3, "figure frame at v");
        if (!linked(phi, sc, tc, 0, 2)) {
            swap_at(L + "/02t", tc, 0, 2);
            return;  // redispatch renormalizes; su leaves 0
        }
        expect(sees(xc, 2), "x sees 2");
        if (req1(L, 2)) return;
        expect(sees(yc, 2), "y sees 2");
        if (!sees(yc, 0)) {
            swap_at(L + "/02y", yc, 0, 2);
            if (done) return;
            if (colv(sc, uc) != 0) return;
            if (req1(L, 2)) return;
            fail("figure-frame y-misses-0 must finish");
        }
        expect(!sees(yc, 3), "y misses 3");
        if (!sees(xc, 1)) {
            KempeChain P = kempe_chain(phi, xc, 1, 2);
            bool at_u = P.shape == ChainShape::Path &&
                        (P.vertices.front() == uc || P.vertices.back() == uc);
            do_swap(L + "/12xP", P, false);
            if (done) return;
            if (at_u) {
                finish_usv(L + "/12xP");
                return;
            }
            expect(!linked(phi, uc, tc, 0, 2), "recoloring P cuts u-t");
            swap_at(L + "/02u", uc, 0, 2);
            if (done) return;
            expect(colv(sc, uc) != 0, "su freed from 0");
            return;
        }
        expect(!sees(xc, 3), "x sees {0,1,2}");
        swap_at(L + "/13x", xc, 1, 3);
        if (done) return;
        if (sees(yc, 1)) {
            swap_at(L + "/13y", yc, 1, 3);
            if (done) return;
        }
        expect(!sees(xc, 1) && !sees(yc, 1), "x and y miss 1");
        KempeChain Q = kempe_chain(phi, xc, 1, 2);
        bool at_u = Q.shape == ChainShape::Path &&
                    (Q.vertices.front() == uc || Q.vertices.back() == uc);
        do_swap(L + "/12xQ", Q, false);
        if (done) return;
        if (at_u) {
            finish_usv(L + "/12xQ");
            return;
        }
        expect(!linked(phi, uc, tc, 0, 2), "recoloring Q cuts u-t");
        swap_at(L + "/02u2", uc, 0, 2);
        if (done) return;
        expect(colv(sc, uc) != 0, "su freed from 0");
        // redispatch into Case 2
    }

    void finish_usv(const std::string& L) {
        unassign(L, sc, uc);
        unassign(L, sc, vc);
        unassign(L, vc, xc);
        assign(L, uc, sc, 1);
        assign(L, sc, vc, 0);
        assign(L, vc, xc, 2);
        assign(L, sc, tc, 2);
        done = true;
    }

    // ---- Case 2: 0 not on su ---------------------------------------------
    void interchange_vw(const std::string&) {
        int zh = second_3_neighbor_of_w();
        expect(zh != tc && zh != uc, "second 3-neighbor clear of t,u");
        int znew = (zh == xc) ? yc : xc;
        ConfigMatch nm = m;
        nm.set_role("v", wc);
        nm.set_role("w", vc);
        nm.set_role("x", std::min(zc, zh));
        nm.set_role("y", std::max(zc, zh));
        nm.set_role("z", znew);
        expect(match_valid(g, nm), "v-w interchange produced an invalid match");
        m = nm;
        bind();
        rebind();
    }

    void finish_wz1(const std::string& L) {
        swap_at(L + "/01z", zc, 0, 1, false);
        expect(colv(wc, zc) == 0 && colv(sc, wc) == 1, "chain z-w-s recolored");
        unassign(L, sc, uc);
        assign(L, sc, uc, 0);
        assign(L, sc, tc, 2);
        done = true;
    }

    bool maybe_wz1(const std::string& L) {
        if (done) return true;
        if (colv(wc, zc) == 1 && !sees(zc, 0) && colv(sc, wc) == 0 && !sees(sc, 1)) {
            finish_wz1(L + "/wz1");
            return true;
        }
        return false;
    }

    void req01us_fail(const std::string& L) {
        swap_at(L + "/01u", uc, 0, 1);
        if (done) return;
        if (req1(L + "/01u", 2)) return;
        fail("u-s (0,1)-unlinked must finish");
    }

    void case2() {
        const std::string L = "L4.C2";
        if (colv(sc, vc) == 0) {
            if (g.has_edge(wc, uc)) {
                dispatch_to_A(L + "/figA", mk_a(sc, tc, wc, uc, zc));
                return;
            }
            if (g.has_edge(wc, tc)) {
                int c = colv(sc, uc);
                unassign(L + "/figA-t", sc, uc);
                assign(L + "/figA-t", sc, tc, c);
                dispatch_to_A(L + "/figA-t", mk_a(sc, uc, wc, tc, zc));
                return;
            }
            interchange_vw(L + "/vw");
            return;  // redispatch with v and w interchanged
        }
        expect(colv(sc, wc) == 0, "s's 0 sits on sw");
        if (colv(sc, uc) == 3) permute(L + "/sym23", {0, 1, 3, 2});
        expect(colv(sc, uc) == 2 && colv(sc, vc) == 3, "case 2 arrangement");
        if (req1(L, 2)) return;
        expect(sees(uc, 1), "u sees 1");
        if (!sees(uc, 3)) {
            swap_at(L + "/13u", uc, 1, 3);
            if (done) return;
            if (req1(L, 2)) return;
            fail("u-misses-3 must finish");
        }
        expect(!sees(uc, 0), "u misses 0");
        if (sees(zc, 0)) {
            if (req1(L, 3)) return;
            if (!linked(phi, uc, sc, 0, 1)) {
                req01us_fail(L);
                return;
            }
            if (sees(zc, 1)) {
                int t2 = !sees(zc, 2) ? 2 : 3;
                expect(!sees(zc, t2), "z misses one of 2,3");
                swap_at(L + "/1tz", zc, 1, t2);
                if (done) return;
            }
            expect(!sees(zc, 1), "z misses 1");
            swap_at(L + "/01z", zc, 0, 1);
            if (done) return;
        }
        expect(!sees(zc, 0), "z misses 0");
        if (!linked(phi, uc, sc, 0, 1)) {
            req01us_fail(L);
            return;
        }
        int wz = colv(wc, zc);
        if (wz == 1) {
            finish_wz1(L);
            return;
        }
        if (wz == 3) {
            case2b(L + "b");
            return;
        }
        expect(wz == 2, "wz in {1,2,3}");
        if (g.has_edge(wc, uc)) {
            dispatch_to_A(L + "/figA", mk_a(sc, tc, wc, uc, zc));
            return;
        }
        if (g.has_edge(wc, tc)) {
            int c = colv(sc, uc);
            unassign(L + "/figA-t", sc, uc);
            assign(L + "/figA-t", sc, tc, c);
            dispatch_to_A(L + "/figA-t", mk_a(sc, uc, wc, tc, zc));
            return;
        }
        int zh = second_3_neighbor_of_w();
        if (zh == xc) roleswap_xy(L + "/xy");  // now zh sits in the y role
        zhat_machine(L, zh, zh == yc);
    }

    void exit_7(const std::string& L, int q, bool into_2a) {
        if (into_2a) {
            case2a(L + "a");
            return;
        }
        m.set_role("z", q);
        bind();
        rebind();
        case2b(L + "b");
    }

    void zhat_machine(const std::string& L, int q, bool into_2a) {
        for (int it = 0; it < 8; ++it) {
            if (done) return;
            if (req1(L, 2) || req1(L, 3)) return;
            if (!linked(phi, uc, sc, 0, 1)) {
                req01us_fail(L);
                return;
            }
            if (maybe_wz1(L)) return;
            int wq = colv(wc, q);
            if (wq == 3) {
                if (!sees(q, 0)) {
                    exit_7(L, q, into_2a);
                    return;
                }
                if (!sees(q, 1)) {
                    swap_at(L + "/01q", q, 0, 1);
                    if (done) return;
                    if (maybe_wz1(L)) return;
                    expect(!sees(q, 0), "q misses 0 after the (0,1)-swap");
                    exit_7(L, q, into_2a);
                    return;
                }
                expect(!sees(q, 2), "q misses 2");
                swap_at(L + "/12q", q, 1, 2);
                if (done) return;
                if (maybe_wz1(L)) return;
                continue;
            }
            expect(wq == 1, "w-q edge in {1,3}");
            if (!sees(q, 0)) {
                swap_at(L + "/01q-w", q, 0, 1, false);
                expect(colv(wc, q) == 0 && colv(sc, wc) == 1, "chain q-w-s recolored");
                unassign(L + "/01q-w", sc, uc);
                assign(L + "/01q-w", sc, uc, 0);
                assign(L + "/01q-w", sc, tc, 2);
                done = true;
                return;
            }
            if (!sees(q, 2)) {
                swap_at(L + "/12q-w", q, 1, 2);
                if (done) return;
                if (maybe_wz1(L)) return;
                fail("the (1,2)-swap at the second 3-neighbor must hand 1 to wz");
            }
            expect(!sees(q, 3), "q misses 3");
            swap_at(L + "/13q", q, 1, 3);
            if (done) return;
            if (maybe_wz1(L)) return;
        }
        fail("zhat machine did not converge");
    }

    // ---- Case 2a: the second 3-neighbor of w is y; y misses 0 -------------
    void case2a(const std::string& L) {
        expect(colv(wc, zc) == 2 && colv(wc, yc) == 3 && !sees(yc, 0) && colv(sc, wc) == 0 &&
                   colv(sc, uc) == 2 && colv(sc, vc) == 3,
               "Case 2a frame");
        int vx = colv(vc, xc);
        if (vx == 2) {
            expect(colv(vc, yc) == 1, "vx=2 forces vy=1");
            fin_wy_rewire(L + "/vx2", 2, -1);
            return;
        }
        if (vx == 1) {
            case2a_vx1(L + ".vx1");
            return;
        }
        expect(vx == 0, "vx in {0,1,2}");
        case2a_vx0(L + ".vx0");
    }

    // The recurring recoloring: vy=3, yw=0, ws=3, sv=1, su=0, st=2, with vx
    // optionally reassigned first (keep = -1 leaves vx alone).
    void fin_wy_rewire(const std::string& L, int vx_new, int unused) {
        (void)unused;
        if (vx_new >= 0) unassign(L, vc, xc);
        unassign(L, vc, yc);
        unassign(L, wc, yc);
        unassign(L, sc, wc);
        unassign(L, sc, vc);
        unassign(L, sc, uc);
        if (vx_new >= 0) assign(L, vc, xc, vx_new);
        assign(L, vc, yc, 3);
        assign(L, yc, wc, 0);
        assign(L, wc, sc, 3);
        assign(L, sc, vc, 1);
        assign(L, sc, uc, 0);
        assign(L, sc, tc, 2);
        done = true;
    }

    void case2a_vx1(const std::string& L) {
        expect(colv(vc, yc) == 2 && pcol(pvc) == 0, "vx=1 forces vy=2, vv'=0");
        if (req1(L, 3)) return;
        expect(sees(xc, 3), "x sees 3");
        if (!sees(xc, 2)) {
            fin_wy_rewire(L + "/xm2", 2, -1);
            return;
        }
        expect(!sees(xc, 0), "x misses 0");
        if (!in_roles(g_other_end(xc, 0, 2))) {
            swap_at(L + "/02x", xc, 0, 2);
            if (done) return;
            expect(!sees(xc, 2), "x misses 2 now");
            fin_wy_rewire(L + "/02x", 2, -1);
            return;
        }
        {
            KempeChain cv = kempe_chain(phi, vc, 0, 2);
            expect(cv.shape == ChainShape::Path, "v's (0,2)-chain is a path");
            int far = cv.vertices.front() == yc ? cv.vertices.back()
                      : cv.vertices.back() == yc ? cv.vertices.front()
                                                 : -1;
            expect(far != -1, "y anchors v's (0,2)-chain");
            if (!in_roles(far)) {
                do_swap(L + "/02v", cv, false);
                if (done) return;
                fin_wy_rewire(L + "/02v", 0, -1);
                return;
            }
        }
        expect(!in_roles(g_other_end(tc, 0, 2)), "t's (0,2)-chain leaves H");
        swap_at(L + "/02t", tc, 0, 2);
        if (done) return;
        // (0,1)-chains in G-E(H) at t, u, v, w, y, z.
        int et = sub_other_end(tc, 0, 1);
        if (et == uc || et == vc || et == yc || et == zc) {
            if (et == vc) unassign(L + "/01t", vc, xc);
            swap_sub(L + "/01t", tc, 0, 1, false);
            if (et == vc) assign(L + "/01t", vc, xc, 0);
            assign(L + "/01t", sc, tc, 1);
            done = true;
            return;
        }
        expect(et == wc, "t's chain pairs with w");
        int eu = sub_other_end(uc, 0, 1);
        bool via_inf = false;
        if (!in_roles(eu)) {
            via_inf = true;
            for (int cand : {zc, vc, yc}) {
                if (!in_roles(sub_other_end(cand, 0, 1))) {
                    eu = cand;
                    break;
                }
            }
            expect(eu == zc || eu == vc || eu == yc, "an infinity partner exists");
        }
        if (eu == zc || eu == vc) {
            if (eu == vc) unassign(L + "/01u", vc, xc);
            unassign(L + "/01u", sc, uc);
            unassign(L + "/01u", sc, vc);
            unassign(L + "/01u", vc, yc);
            unassign(L + "/01u", wc, yc);
            unassign(L + "/01u", sc, wc);
            swap_sub(L + "/01u", uc, 0, 1, false);
            if (via_inf) swap_sub(L + "/01u", eu, 0, 1, false);
            if (eu == vc) assign(L + "/01u", vc, xc, 0);
            assign(L + "/01u", sc, uc, 1);
            assign(L + "/01u", sc, vc, 2);
            assign(L + "/01u", vc, yc, 3);
            assign(L + "/01u", yc, wc, 0);
            assign(L + "/01u", wc, sc, 3);
            assign(L + "/01u", sc, tc, 0);
            done = true;
            return;
        }
        expect(eu == yc, "u's chain pairs with y");
        unassign(L + "/01uy", sc, uc);
        unassign(L + "/01uy", sc, vc);
        unassign(L + "/01uy", vc, yc);
        unassign(L + "/01uy", wc, yc);
        unassign(L + "/01uy", wc, zc);
        unassign(L + "/01uy", sc, wc);
        swap_sub(L + "/01uy", uc, 0, 1, false);
        if (via_inf) swap_sub(L + "/01uy", yc, 0, 1, false);
        assign(L + "/01uy", sc, uc, 1);
        assign(L + "/01uy", sc, vc, 2);
        assign(L + "/01uy", vc, yc, 3);
        assign(L + "/01uy", yc, wc, 2);
        assign(L + "/01uy", wc, zc, 0);
        assign(L + "/01uy", wc, sc, 3);
        assign(L + "/01uy", sc, tc, 0);
        done = true;
    }

    void case2a_vx0(const std::string& L) {
        if (colv(vc, yc) == 1) {
            expect(pcol(pvc) == 2, "vy=1 forces vv'=2");
            fin_wy_rewire(L + "/vy1", -1, -1);
            return;
        }
        expect(colv(vc, yc) == 2 && pcol(pvc) == 1, "vy=2, vv'=1");
        if (sees(xc, 2)) {
            if (!sees(xc, 1)) {
                swap_at(L + "/12x", xc, 1, 2);
                if (done) return;
            } else {
                swap_at(L + "/13x", xc, 1, 3);
                if (done) return;
                if (colv(vc, yc) != 2 || pcol(pvc) != 1) return;  // redispatch
                swap_at(L + "/12x", xc, 1, 2);
                if (done) return;
            }
        }
        if (colv(vc, yc) != 2 || colv(vc, xc) != 0) return;  // redispatch
        expect(!sees(xc, 2), "x misses 2");
        KempeChain gu = kempe_chain(phi, uc, 0, 1);
        if (!gu.contains_vertex(sc)) {
            do_swap(L + "/01uA", gu, false);
            if (done) return;
            unassign(L + "/01uA", sc, uc);
            assign(L + "/01uA", uc, sc, 1);
            assign(L + "/01uA", sc, tc, 2);
            done = true;
            return;
        }
        int eu = sub_other_end(uc, 0, 1);
        if (eu == xc) {
            unassign(L + "/beta", vc, xc);
            unassign(L + "/beta", vc, yc);
            swap_sub(L + "/beta", uc, 0, 1, false);
            assign(L + "/beta", vc, xc, 2);
            assign(L + "/beta", vc, yc, 0);
            if (req1(L + "/beta", 2)) return;
            fail("beta route must finish");
        }
        if (eu == vc) {
            gamma_route(L + "/gamma");
            return;
        }
        expect(eu == wc, "u's restricted chain reaches w");
        int ev = sub_other_end(vc, 0, 1);
        bool via_inf = false;
        if (!in_roles(ev)) {
            via_inf = true;
            ev = -1;
            for (int cand : {xc, zc, yc}) {
                if (!in_roles(sub_other_end(cand, 0, 1))) {
                    ev = cand;
                    break;
                }
            }
            expect(ev != -1, "an infinity partner exists for v");
        }
        if (ev == yc) {
            unassign(L + "/Py", vc, xc);
            unassign(L + "/Py", vc, yc);
            unassign(L + "/Py", wc, yc);
            unassign(L + "/Py", wc, zc);
            unassign(L + "/Py", sc, wc);
            unassign(L + "/Py", sc, vc);
            unassign(L + "/Py", sc, uc);
            swap_sub(L + "/Py", vc, 0, 1, false);
            if (via_inf) swap_sub(L + "/Py", yc, 0, 1, false);
            assign(L + "/Py", vc, xc, 2);
            assign(L + "/Py", vc, yc, 3);
            assign(L + "/Py", yc, wc, 2);
            assign(L + "/Py", wc, zc, 0);
            assign(L + "/Py", wc, sc, 3);
            assign(L + "/Py", sc, vc, 1);
            assign(L + "/Py", sc, uc, 0);
            assign(L + "/Py", sc, tc, 2);
            done = true;
            return;
        }
        expect(ev == xc || ev == zc, "v's chain pairs inside the figure");
        unassign(L + "/Pxz", vc, xc);
        unassign(L + "/Pxz", vc, yc);
        unassign(L + "/Pxz", wc, yc);
        unassign(L + "/Pxz", sc, wc);
        unassign(L + "/Pxz", sc, vc);
        unassign(L + "/Pxz", sc, uc);
        swap_sub(L + "/Pxz", vc, 0, 1, false);
        if (via_inf) swap_sub(L + "/Pxz", ev, 0, 1, false);
        assign(L + "/Pxz", vc, xc, 2);
        assign(L + "/Pxz", vc, yc, 3);
        assign(L + "/Pxz", yc, wc, 0);
        assign(L + "/Pxz", wc, sc, 3);
        assign(L + "/Pxz", sc, vc, 1);
        assign(L + "/Pxz", sc, uc, 0);
        assign(L + "/Pxz", sc, tc, 2);
        done = true;
    }

    void gamma_route(const std::string& L) {
        if (req1(L, 2) || req1(L, 3)) return;
        swap_at(L + "/02yvx", yc, 0, 2, false);
        expect(colv(vc, yc) == 0 && colv(vc, xc) == 2, "the y-v-x trade");
        if (try_direct(L)) return;
        if (req1(L, 2) || req1(L, 3)) return;
        fail("gamma residual: both linkages persist");
    }

    // ---- Case 2b: the lemma's figure with wz=3, z missing 0 ---------------
    bool check_wz_flip(const std::string& L) {
        if (done) return true;
        return maybe_wz1(L);
    }

    void case2b(const std::string& L) {
        expect(colv(wc, zc) == 3 && !sees(zc, 0) && colv(sc, wc) == 0 && colv(sc, uc) == 2 &&
                   colv(sc, vc) == 3,
               "Case 2b frame");
        // Stage 1: force vx = 1.
        for (int it = 0; it < 24; ++it) {
            if (done) return;
            int vx = colv(vc, xc);
            if (vx == 1) break;
            if (colv(vc, yc) == 1) {
                roleswap_xy(L + "/xy");
                continue;
            }
            if (vx == 0) {
                roleswap_xy(L + "/xy0");
                continue;
            }
            expect(vx == 2 && colv(vc, yc) == 0 && pcol(pvc) == 1, "the (2,0,1) case");
            if (!sees(xc, 1)) {
                swap_at(L + "/12x", xc, 1, 2);
                if (done) return;
                continue;
            }
            if (!sees(xc, 3)) {
                swap_at(L + "/13x", xc, 1, 3);
                if (done) return;
                if (check_wz_flip(L)) return;
                continue;
            }
            expect(!sees(xc, 0), "x misses 0");
            if (!linked(phi, uc, tc, 0, 3)) {
                swap_at(L + "/03u", uc, 0, 3);
                if (done) return;
                if (colv(sc, wc) != 0 || colv(wc, zc) != 3) return;  // redispatch
                swap_at(L + "/13u", uc, 1, 3);
                if (done) return;
                if (check_wz_flip(L)) return;
                if (req1(L + "/ut03", 2)) return;
                fail("u-t (0,3)-unlinked must finish");
            }
            if (!sees(yc, 3)) {
                swap_at(L + "/03x", xc, 0, 3);
                if (done) return;
                if (colv(sc, wc) != 0 || colv(wc, zc) != 3) return;  // redispatch
                continue;
            }
            if (!sees(yc, 2)) {
                swap_at(L + "/12y", yc, 1, 2);
                if (done) return;
                continue;
            }
            int ey = g_other_end(yc, 0, 1);
            if (ey != zc) {
                swap_at(L + "/01y", yc, 0, 1);
                if (done) return;
                if (colv(sc, wc) != 0) return;  // redispatch
                continue;
            }
            swap_at(L + "/01x", xc, 0, 1);
            if (done) return;
            if (colv(sc, wc) != 0) return;  // redispatch
            if (!sees(uc, 1)) {
                if (req1(L + "/x01", 2)) return;
                fail("u handed 0 must finish");
            }
            // next rounds pick up x missing 1
        }
        if (done) return;
        expect(colv(vc, xc) == 1, "stage 1 pinned vx=1");

        // Stage 2: force vy = 2 (so vv' = 0).
        for (int it = 0; it < 24; ++it) {
            if (done) return;
            if (colv(vc, xc) != 1) return;  // redispatch
            if (colv(vc, yc) == 2) break;
            expect(colv(vc, yc) == 0 && pcol(pvc) == 2, "contrary stage-2 state");
            if (req1(L + "/s2", 3)) return;
            int mx = lowest(missm(xc));
            int my = lowest(missm(yc));
            expect(mx == 0 || mx == 2, "x misses 0 or 2");
            if (mx == 0 && my == 3) {
                swap_at(L + "/s2/01x", xc, 0, 1);
                if (done) return;
                if (req1(L + "/s2a", 3)) return;
                if (colv(sc, wc) != 0) return;
                continue;
            }
            if ((mx == 0 || mx == 2) && my == 1) {
                swap_at(L + "/s2/13y", yc, 1, 3);
                if (done) return;
                if (check_wz_flip(L)) return;
                continue;
            }
            if (mx == 2 && my == 0) {
                // not listed by the lemma: fold into (0, ...) via the x-swap
                swap_at(L + "/s2/12x", xc, 1, 2);
                if (done) return;
                roleswap_xy(L + "/s2/xy");
                continue;
            }
            if (mx == 0 && my == 2) {
                swap_at(L + "/s2/12y", yc, 1, 2);
                if (done) return;
                if (colv(vc, xc) != 2) continue;  // landed in another pair
                if (g_other_end(yc, 0, 1) != zc) {
                    swap_at(L + "/s2/01y", yc, 0, 1);
                    if (done) return;
                    continue;
                }
                swap_at(L + "/s2/01x", xc, 0, 1);
                if (done) return;
                swap_at(L + "/s2/12x2", xc, 1, 2);
                if (done) return;
                swap_at(L + "/s2/12y2", yc, 1, 2);
                if (done) return;
                continue;
            }
            if (mx == 2 && my == 2) {
                swap_at(L + "/s22/12x", xc, 1, 2);
                if (done) return;
                swap_at(L + "/s22/12y", yc, 1, 2);
                if (done) return;
                swap_at(L + "/s22/13x", xc, 1, 3);
                if (done) return;
                if (check_wz_flip(L)) return;
                swap_at(L + "/s22/13y", yc, 1, 3);
                if (done) return;
                if (check_wz_flip(L)) return;
                swap_at(L + "/s22/03x", xc, 0, 3);
                if (done) return;
                swap_at(L + "/s22/01x", xc, 0, 1);
                if (done) return;
                swap_at(L + "/s22/12x2", xc, 1, 2);
                if (done) return;
                continue;
            }
            expect(mx == 2 && my == 3, "stage-2 pair accounted for");
            s2_fin23(L + "/s2fin");
            return;
        }
        if (done) return;
        expect(colv(vc, yc) == 2 && pcol(pvc) == 0, "stage 2 pinned vy=2, vv'=0");

        // Stage 3: pin the missing colors of x and y to (0, 3).
        for (int it = 0; it < 16; ++it) {
            if (done) return;
            if (colv(vc, xc) != 1 || colv(vc, yc) != 2) return;  // redispatch
            if (req1(L + "/s3", 3)) return;
            int mx = lowest(missm(xc));
            int my = lowest(missm(yc));
            if (mx == 0 && my == 3) break;
            if (mx == 2 && my == 3) {
                swap_at(L + "/s3/12x", xc, 1, 2);
                if (done) return;
                if (req1(L + "/s3a", 3)) return;
                fail("stage-3 (2,3) must finish");
            }
            if (mx == 2 && my == 1) {
                swap_at(L + "/s3/13y", yc, 1, 3);
                if (done) return;
                if (check_wz_flip(L)) return;
                continue;
            }
            if (mx == 2 && my == 0) {
                swap_at(L + "/s3/12x0", xc, 1, 2);
                if (done) return;
                roleswap_xy(L + "/s3/xy");
                continue;
            }
            if (mx == 0 && my == 0) {
                if (!linked(phi, xc, vc, 0, 3)) {
                    swap_at(L + "/s3/03x", xc, 0, 3);
                    if (done) return;
                    if (req1(L + "/s3b", 3)) return;
                    fail("stage-3 (0,0) unlinked must finish");
                }
                swap_at(L + "/s3/03y", yc, 0, 3);
                if (done) return;
                if (colv(sc, wc) != 0 || colv(sc, vc) != 3) return;  // redispatch
                continue;
            }
            expect(mx == 0 && my == 1, "stage-3 pair accounted for");
            swap_at(L + "/s3/13y2", yc, 1, 3);
            if (done) return;
            if (check_wz_flip(L)) return;
        }
        if (done) return;

        // Stage 4: the closing (1,2)-chains at t, u, x, y.
        expect(colv(vc, xc) == 1 && colv(vc, yc) == 2 && pcol(pvc) == 0 && !sees(xc, 0) &&
                   !sees(yc, 3),
               "the lemma's final figure");
        int ey = sub_other_end(yc, 1, 2);
        auto leaves = [&](int v2) { return !in_roles(sub_other_end(v2, 1, 2)); };
        if (ey == xc || (!in_roles(ey) && leaves(xc))) {
            bool paired = ey == xc;
            unassign(L + "/fin-yx", vc, xc);
            unassign(L + "/fin-yx", vc, yc);
            swap_sub(L + "/fin-yx", yc, 1, 2, false);
            if (!paired) swap_sub(L + "/fin-yx", xc, 1, 2, false);
            assign(L + "/fin-yx", vc, xc, 2);
            assign(L + "/fin-yx", vc, yc, 1);
            if (req1(L + "/fin-yx", 3)) return;
            fail("final y-x pairing must finish");
        }
        if (ey == uc || (!in_roles(ey) && leaves(uc))) {
            bool paired = ey == uc;
            unassign(L + "/fin-yu", vc, yc);
            unassign(L + "/fin-yu", sc, vc);
            unassign(L + "/fin-yu", sc, uc);
            swap_sub(L + "/fin-yu", yc, 1, 2, false);
            if (!paired) swap_sub(L + "/fin-yu", uc, 1, 2, false);
            assign(L + "/fin-yu", yc, vc, 3);
            assign(L + "/fin-yu", vc, sc, 2);
            assign(L + "/fin-yu", sc, uc, 1);
            assign(L + "/fin-yu", sc, tc, 3);
            done = true;
            return;
        }
        expect(ey == tc || (!in_roles(ey) && leaves(tc)), "y pairs with t");
        bool paired = ey == tc;
        unassign(L + "/fin-yt", vc, yc);
        unassign(L + "/fin-yt", sc, vc);
        unassign(L + "/fin-yt", sc, wc);
        unassign(L + "/fin-yt", wc, zc);
        unassign(L + "/fin-yt", sc, uc);
        swap_sub(L + "/fin-yt", yc, 1, 2, false);
        if (!paired) swap_sub(L + "/fin-yt", tc, 1, 2, false);
        assign(L + "/fin-yt", yc, vc, 3);
        assign(L + "/fin-yt", vc, sc, 2);
        assign(L + "/fin-yt", sc, wc, 3);
        assign(L + "/fin-yt", wc, zc, 0);
        assign(L + "/fin-yt", sc, uc, 0);
        assign(L + "/fin-yt", sc, tc, 1);
        done = true;
    }

    void s2_fin23(const std::string& L) {
        int ex = sub_other_end(xc, 0, 1);
        if (ex != wc) {
            unassign(L + "/P", vc, xc);
            unassign(L + "/P", vc, yc);
            unassign(L + "/P", sc, vc);
            swap_sub(L + "/P", xc, 0, 1, false);
            assign(L + "/P", vc, xc, 0);
            assign(L + "/P", vc, yc, 3);
            assign(L + "/P", vc, sc, 1);
            assign(L + "/P", sc, tc, 3);
            done = true;
            return;
        }
        int eu = sub_other_end(uc, 0, 1);
        if (eu == zc || !in_roles(eu)) {
            swap_sub(L + "/Q", uc, 0, 1);
            if (done) return;
            unassign(L + "/Q", sc, uc);
            assign(L + "/Q", uc, sc, 1);
            assign(L + "/Q", sc, tc, 2);
            done = true;
            return;
        }
        expect(eu == yc, "Q ends at y");
        unassign(L + "/Qy", vc, yc);
        unassign(L + "/Qy", sc, vc);
        unassign(L + "/Qy", sc, wc);
        unassign(L + "/Qy", wc, zc);
        unassign(L + "/Qy", sc, uc);
        swap_sub(L + "/Qy", uc, 0, 1, false);
        assign(L + "/Qy", yc, vc, 3);
        assign(L + "/Qy", vc, sc, 0);
        assign(L + "/Qy", sc, wc, 3);
        assign(L + "/Qy", wc, zc, 0);
        assign(L + "/Qy", sc, uc, 1);
        assign(L + "/Qy", sc, tc, 2);
        done = true;
    }
};

void check_extension_input(const Graph& g, const ConfigMatch& m, const EdgeColoring& c) {
    if (!match_valid(g, m)) throw std::invalid_argument("invalid configuration match");
    if (c.k() != 4) throw std::invalid_argument("extension needs a 4-coloring");
    Edge de = m.designated_edge();
    int eidx = g.edge_index(de.u, de.v);
    for (int e = 0; e < g.m(); ++e) {
        if (e == eidx) {
            if (c.color(e) != -1) throw std::invalid_argument("designated edge already colored");
        } else if (c.color(e) == -1) {
            throw std::invalid_argument("coloring not total on G-e");
        }
    }
    if (!c.is_proper()) throw std::invalid_argument("input coloring improper");
}

}  // namespace

NormalizeResult normalize(const EdgeColoring& c, const ConfigMatch& m) {
    const Graph& g = c.graph();
    check_extension_input(g, m, c);
    Edge de = m.designated_edge();
    int a3 = g.degree(de.u) == 3 ? de.u : de.v;
    int a4 = a3 == de.u ? de.v : de.u;
    NormalizeResult out;
    ColorMask shared = c.missing(a3) & c.missing(a4);
    if (shared) {
        out.direct = true;
        out.direct_color = __builtin_ctz(shared);
        out.coloring = c;
        out.perm = {0, 1, 2, 3};
        return out;
    }
    ColorMask m3 = c.missing(a3), m4 = c.missing(a4);
    if (__builtin_popcount(m3) != 2 || __builtin_popcount(m4) != 1)
        throw std::invalid_argument("endpoint degrees off for normalization");
    int cc = __builtin_ctz(m4);
    int aa = __builtin_ctz(m3);
    int bb = __builtin_ctz(m3 & ~(ColorMask(1) << aa));
    int dd = 6 - aa - bb - cc;
    std::vector<int> perm(4);
    perm[dd] = 0;
    perm[cc] = 1;
    perm[aa] = 2;
    perm[bb] = 3;
    out.coloring = apply_color_permutation(c, perm);
    out.perm = perm;
    return out;
}

static ExtensionTrace run_extender(const Graph& g, const ConfigMatch& m, const EdgeColoring& c) {
    check_extension_input(g, m, c);
    ExtCtx ctx;
    ExtensionTrace trace;
    switch (m.kind) {
        case ConfigKind::A: {
            AExt ext(g, m, c, &ctx, &trace.steps);
            trace.final = ext.run();
            break;
        }
        case ConfigKind::B: {
            BExt ext(g, m, c, &ctx, &trace.steps);
            trace.final = ext.run();
            break;
        }
        case ConfigKind::C: {
            CExt ext(g, m, c, &ctx, &trace.steps);
            trace.final = ext.run();
            break;
        }
    }
    return trace;
}

ExtensionTrace extend_a(const Graph& g, const ConfigMatch& m, const EdgeColoring& c) {
    if (m.kind != ConfigKind::A) throw std::invalid_argument("extend_a wants kind A");
    return run_extender(g, m, c);
}
ExtensionTrace extend_b(const Graph& g, const ConfigMatch& m, const EdgeColoring& c) {
    if (m.kind != ConfigKind::B) throw std::invalid_argument("extend_b wants kind B");
    return run_extender(g, m, c);
}
ExtensionTrace extend_c(const Graph& g, const ConfigMatch& m, const EdgeColoring& c) {
    if (m.kind != ConfigKind::C) throw std::invalid_argument("extend_c wants kind C");
    return run_extender(g, m, c);
}
ExtensionTrace extend_configuration(const Graph& g, const ConfigMatch& m, const EdgeColoring& c) {
    return run_extender(g, m, c);
}

EdgeColoring replay_trace(const Graph& g, const EdgeColoring& initial, const ExtensionTrace& t) {
    EdgeColoring cur = initial;
    for (const TraceStep& st : t.steps) {
        switch (st.action) {
            case StepAction::Assign: {
                int idx = g.edge_index(st.eu, st.ev);
                cur.set(idx, st.color);
                break;
            }
            case StepAction::Unassign: {
                int idx = g.edge_index(st.eu, st.ev);
                cur.unset(idx);
                break;
            }
            case StepAction::Swap:
                swap_chain(cur, st.chain);
                break;
            case StepAction::Permute:
                cur = apply_color_permutation(cur, st.perm);
                break;
        }
        if (!cur.is_proper()) throw std::logic_error("trace replay hit an improper state");
    }
    if (!(cur == t.final)) throw std::logic_error("trace replay diverged from the recorded final");
    return cur;
}

std::string ExtensionTrace::to_json() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const TraceStep& st = steps[i];
        if (i) out << ',';
        out << "{\"case\":\"" << st.label << "\",";
        switch (st.action) {
            case StepAction::Assign:
                out << "\"op\":\"assign\",\"edge\":\"" << st.eu << '-' << st.ev
                    << "\",\"color\":" << st.color;
                break;
            case StepAction::Unassign:
                out << "\"op\":\"unassign\",\"edge\":\"" << st.eu << '-' << st.ev << '"';
                break;
            case StepAction::Swap:
                out << "\"op\":\"swap\",\"colors\":[" << st.chain.ci << ',' << st.chain.cj
                    << "],\"edges\":" << st.chain.edge_ids.size()
                    << ",\"restricted\":" << (st.restricted ? "true" : "false");
                break;
            case StepAction::Permute: {
                out << "\"op\":\"permute\",\"perm\":[";
                for (std::size_t k = 0; k < st.perm.size(); ++k) {
                    if (k) out << ',';
                    out << st.perm[k];
                }
                out << ']';
                break;
            }
        }
        out << '}';
    }
    out << ']';
    return out.str();
}

std::optional<EdgeColoring> kempe_search_extend(const Graph& g, const Edge& e,
                                                const EdgeColoring& c,
                                                const std::vector<int>& tracked,
                                                long long node_limit) {
    int eidx = g.edge_index(e.u, e.v);
    if (eidx < 0) throw std::invalid_argument("no such edge");
    auto closing = [&](const EdgeColoring& col) -> int {
        ColorMask both = col.missing(e.u) & col.missing(e.v);
        return both ? __builtin_ctz(both) : -1;
    };
    if (int col0 = closing(c); col0 >= 0) {
        EdgeColoring out = c;
        out.set(eidx, col0);
        return out;
    }
    std::deque<EdgeColoring> queue{c};
    std::unordered_set<uint64_t> seen{c.hash()};
    long long nodes = 0;
    while (!queue.empty()) {
        EdgeColoring cur = std::move(queue.front());
        queue.pop_front();
        for (int v : tracked) {
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    KempeChain chain = kempe_chain(cur, v, i, j);
                    if (chain.edge_ids.empty()) continue;
                    EdgeColoring nxt = swapped(cur, chain);
                    if (++nodes > node_limit) return std::nullopt;
                    if (int fc = closing(nxt); fc >= 0) {
                        nxt.set(eidx, fc);
                        return nxt;
                    }
                    if (seen.insert(nxt.hash()).second) queue.push_back(std::move(nxt));
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace hz4
