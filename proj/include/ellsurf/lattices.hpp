#pragma once

#include <string>
#include <vector>

#include "ellsurf/kodaira.hpp"
#include "ellsurf/rational.hpp"

namespace ellsurf {

/// A_n (n>=1), D_m (m>=4), E_6/7/8.
struct RootLatticeLabel {
    char family = 'A';
    int rank = 1;

    static RootLatticeLabel parse(const std::string& s);
    std::string str() const { return family + std::to_string(rank); }
};

/// Integer Gram matrix (square, symmetric).
struct Lattice {
    std::vector<std::vector<Int>> gram;

    int rank() const { return (int)gram.size(); }
    bool even() const {
        for (int i = 0; i < rank(); ++i)
            if (gram[i][i] % 2 != 0) return false;
        return true;
    }
    static Lattice direct_sum(const Lattice& a, const Lattice& b);
};

/// Negative-definite Gram matrix of the root lattice (-2 diagonal).
Lattice root_gram(const RootLatticeLabel& l);

/// Exact determinant (Bareiss).
Int det(const Lattice& L);
Int root_det(const RootLatticeLabel& l);

/// Smith normal form: U*M*V = D, U,V unimodular, d1 | d2 | ... .
struct Smith {
    std::vector<std::vector<Int>> U, D, V;
    std::vector<Int> diag() const {
        std::vector<Int> d;
        for (size_t i = 0; i < D.size() && i < D[0].size(); ++i) d.push_back(D[i][i]);
        return d;
    }
};
Smith smith_normal_form(std::vector<std::vector<Int>> M);

struct DiscGroup {
    std::vector<Int> invariant_factors; // nontrivial ones, d1 | d2 | ...
    Int order() const {
        Int o = 1;
        for (const Int& d : invariant_factors) o *= d;
        return o;
    }
};

/// G_L = L^dual / L for a nonsingular lattice.
DiscGroup disc_group(const Lattice& L);

/// q_L on the Smith generators: diagonal values mod 2Z, linkings mod Z.
struct DiscForm {
    std::vector<Int> invariant_factors;
    std::vector<Rat> q_diag;                  // q(g_i) mod 2Z, normalised to [0,2)
    std::vector<std::vector<Rat>> linking;    // b(g_i,g_j) mod Z, normalised to [0,1)
};
DiscForm disc_form(const Lattice& L); // OddLattice if L is not even

/// Number of invariant factors divisible by p.
int length_p(const DiscGroup& g, const Int& p);

/// Trivial lattice of an analysed surface:
/// [[-chi, 1], [1, 0]] (+) root blocks of all reducible fibres, one block per
/// geometric point (places of degree d contribute d copies).
Lattice trivial_lattice(const SurfaceAnalysis& a);

/// Root lattice attached to a fibre type, if any.
bool root_label_of(const KodairaType& t, RootLatticeLabel& out);

} // namespace ellsurf
