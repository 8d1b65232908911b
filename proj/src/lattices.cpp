#include "ellsurf/lattices.hpp"

namespace ellsurf {

RootLatticeLabel RootLatticeLabel::parse(const std::string& s) {
    check(s.size() >= 2, "IllegalRank", "bad root lattice label '" + s + "'");
    RootLatticeLabel l;
    l.family = s[0];
    l.rank = std::stoi(s.substr(1));
    bool ok = (l.family == 'A' && l.rank >= 1) || (l.family == 'D' && l.rank >= 4) ||
              (l.family == 'E' && l.rank >= 6 && l.rank <= 8);
    check(ok, "IllegalRank", "no root lattice called '" + s + "'");
    return l;
}

Lattice Lattice::direct_sum(const Lattice& a, const Lattice& b) {
    Lattice s;
    int n = a.rank(), m = b.rank();
    s.gram.assign(n + m, std::vector<Int>(n + m, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.gram[i][j] = a.gram[i][j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s.gram[n + i][n + j] = b.gram[i][j];
    return s;
}

Lattice root_gram(const RootLatticeLabel& l) {
    int n = l.rank;
    // validate as in parse
    bool ok = (l.family == 'A' && n >= 1) || (l.family == 'D' && n >= 4) ||
              (l.family == 'E' && n >= 6 && n <= 8);
    check(ok, "IllegalRank", "no root lattice called '" + l.str() + "'");
    Lattice L;
    L.gram.assign(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i) L.gram[i][i] = -2;
    auto join = [&](int i, int j) {
        L.gram[i][j] = 1;
        L.gram[j][i] = 1;
    };
    if (l.family == 'A') {
        for (int i = 0; i + 1 < n; ++i) join(i, i + 1);
    } else if (l.family == 'D') {
        // chain 0..n-2, fork n-1 attached to n-3
        for (int i = 0; i + 1 < n - 1; ++i) join(i, i + 1);
        join(n - 3, n - 1);
    } else {
        // E_n: chain 0..n-2, extra node n-1 attached to chain node 2
        for (int i = 0; i + 1 < n - 1; ++i) join(i, i + 1);
        join(2, n - 1);
    }
    return L;
}

Int det(const Lattice& L) {
    // Bareiss fraction-free elimination
    int n = L.rank();
    if (n == 0) return 1;
    std::vector<std::vector<Int>> a = L.gram;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (sgn(a[k][k]) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (sgn(a[i][k]) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Int root_det(const RootLatticeLabel& l) { return det(root_gram(l)); }

namespace {

using Mat = std::vector<std::vector<Int>>;

Mat identity(int n) {
    Mat I(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

void row_swap(Mat& m, int i, int j) { std::swap(m[i], m[j]); }
void col_swap(Mat& m, int i, int j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}
void row_addmul(Mat& m, int dst, int src, const Int& c) {
    for (size_t k = 0; k < m[dst].size(); ++k) m[dst][k] += c * m[src][k];
}
void col_addmul(Mat& m, int dst, int src, const Int& c) {
    for (auto& row : m) row[dst] += c * row[src];
}
void row_neg(Mat& m, int i) {
    for (auto& x : m[i]) x = -x;
}
void col_neg(Mat& m, int i) {
    for (auto& row : m) row[i] = -row[i];
}

} // namespace

Smith smith_normal_form(Mat M) {
    int rows = (int)M.size();
    int cols = rows ? (int)M[0].size() : 0;
    Smith S;
    S.U = identity(rows);
    S.V = identity(cols);
    int k = 0;
    while (k < rows && k < cols) {
        // pick the pivot of minimal absolute value in the remaining block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                if (sgn(M[i][j]) == 0) continue;
                Int a = abs(M[i][j]);
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // rest is zero
        if (pi != k) {
            row_swap(M, k, pi);
            row_swap(S.U, k, pi);
        }
        if (pj != k) {
            col_swap(M, k, pj);
            col_swap(S.V, k, pj);
        }
        bool clean = true;
        for (int i = k + 1; i < rows; ++i) {
            Int q = M[i][k] / M[k][k];
            if (sgn(q) != 0) {
                row_addmul(M, i, k, -q);
                row_addmul(S.U, i, k, -q);
            }
            if (sgn(M[i][k]) != 0) clean = false;
        }
        for (int j = k + 1; j < cols; ++j) {
            Int q = M[k][j] / M[k][k];
            if (sgn(q) != 0) {
                col_addmul(M, j, k, -q);
                col_addmul(S.V, j, k, -q);
            }
            if (sgn(M[k][j]) != 0) clean = false;
        }
        if (!clean) continue; // smaller remainders appeared; repick pivot
        // divisibility fix: fold any non-multiple into column k
        bool redo = false;
        for (int i = k + 1; i < rows && !redo; ++i)
            for (int j = k + 1; j < cols && !redo; ++j) {
                if (M[i][j] % M[k][k] != 0) {
                    row_addmul(M, k, i, Int(1));
                    row_addmul(S.U, k, i, Int(1));
                    redo = true;
                }
            }
        if (redo) continue;
        if (sgn(M[k][k]) < 0) {
            row_neg(M, k);
            row_neg(S.U, k);
        }
        ++k;
    }
    S.D = M;
    return S;
}

DiscGroup disc_group(const Lattice& L) {
    check(det(L) != 0, "SingularLattice", "discriminant group of a singular lattice");
    Smith s = smith_normal_form(L.gram);
    DiscGroup g;
    for (const Int& d : s.diag())
        if (d != 1) g.invariant_factors.push_back(d);
    return g;
}

namespace {

Rat mod_interval(const Rat& x, long period) {
    // reduce into [0, period)
    Int num = rat_num(x), den = rat_den(x);
    Int p = Int(period) * den;
    Int r = num % p;
    if (sgn(r) < 0) r += p;
    Rat out(r, den);
    out.canonicalize();
    return out;
}

std::vector<std::vector<Rat>> rational_inverse(const Mat& m) {
    int n = (int)m.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!is_zero(a[r][c])) {
                piv = r;
                break;
            }
        check(piv >= 0, "SingularLattice", "gram matrix is singular");
        std::swap(a[c], a[piv]);
        Rat inv = Rat(1) / a[c][c];
        for (int j = 0; j < 2 * n; ++j) a[c][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || is_zero(a[r][c])) continue;
            Rat f = a[r][c];
            for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

} // namespace

DiscForm disc_form(const Lattice& L) {
    check(L.even(), "OddLattice", "discriminant forms require an even lattice");
    check(det(L) != 0, "SingularLattice", "discriminant form of a singular lattice");
    int n = L.rank();
    Smith s = smith_normal_form(L.gram);
    // generators g_i = M^{-1} U^{-1} e_i; q(g_i) = (U^{-T} M^{-1} U^{-1})_{ii}
    // and we only keep indices with d_i != 1.
    auto Minv = rational_inverse(L.gram);
    auto Uinv = rational_inverse(s.U);
    // Q = Uinv^T * Minv * Uinv
    std::vector<std::vector<Rat>> tmp(n, std::vector<Rat>(n, Rat(0))), Q(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) tmp[i][j] += Minv[i][k] * Uinv[k][j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) Q[i][j] += Uinv[k][i] * tmp[k][j];
    DiscForm f;
    std::vector<int> keep;
    auto diag = s.diag();
    for (int i = 0; i < n; ++i)
        if (diag[i] != 1) {
            keep.push_back(i);
            f.invariant_factors.push_back(diag[i]);
        }
    for (int a : keep) {
        f.q_diag.push_back(mod_interval(Q[a][a], 2));
        std::vector<Rat> row;
        for (int b : keep) row.push_back(mod_interval(Q[a][b], 1));
        f.linking.push_back(row);
    }
    return f;
}

int length_p(const DiscGroup& g, const Int& p) {
    int c = 0;
    for (const Int& d : g.invariant_factors)
        if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) ++c;
    return c;
}

bool root_label_of(const KodairaType& t, RootLatticeLabel& out) {
    switch (t.family) {
        case KodairaType::In:
            if (t.n < 2) return false;
            out = {'A', t.n - 1};
            return true;
        case KodairaType::II: return false;
        case KodairaType::III: out = {'A', 1}; return true;
        case KodairaType::IV: out = {'A', 2}; return true;
        case KodairaType::InStar: out = {'D', t.n + 4}; return true;
        case KodairaType::IVStar: out = {'E', 6}; return true;
        case KodairaType::IIIStar: out = {'E', 7}; return true;
        case KodairaType::IIStar: out = {'E', 8}; return true;
    }
    return false;
}

Lattice trivial_lattice(const SurfaceAnalysis& a) {
    Lattice L;
    L.gram = {{Int(-a.chi), Int(1)}, {Int(1), Int(0)}};
    for (const auto& f : a.fibres) {
        RootLatticeLabel lbl;
        if (!root_label_of(f.type, lbl)) continue;
        Lattice R = root_gram(lbl);
        for (int copy = 0; copy < f.place.degree(); ++copy) L = Lattice::direct_sum(L, R);
    }
    return L;
}

} // namespace ellsurf
