#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "opforge/complex.hpp"
#include "opforge/simplicial.hpp"

namespace opforge {

struct MissingNullary : std::runtime_error {
    explicit MissingNullary(const std::string& msg) : std::runtime_error(msg) {}
};
struct ArityOverflow : std::runtime_error {
    explicit ArityOverflow(const std::string& msg) : std::runtime_error(msg) {}
};
struct InfiniteHom : std::runtime_error {
    explicit InfiniteHom(const std::string& msg) : std::runtime_error(msg) {}
};
struct BadBasis : std::runtime_error {
    explicit BadBasis(const std::string& msg) : std::runtime_error(msg) {}
};

// Ordered input color tuple plus output color; colors are indices into the
// operad's color list.
struct CompKey {
    std::vector<int> in;
    int out = 0;
    int arity() const { return static_cast<int>(in.size()); }
    auto operator<=>(const CompKey&) const = default;
};

std::string key_to_string(const CompKey& k);

// Substitute the inner tuple for slot i of the outer tuple.
CompKey composed_key(const CompKey& outer, int i, const CompKey& inner);

// Permutations are stored slot-to-position: sigma[t] is the new position of
// slot t. apply_perm(sigma, c)[sigma[t]] = c[t].
std::vector<int> apply_perm(const std::vector<int>& sigma, const std::vector<int>& c);
std::vector<std::vector<int>> permutations_lex(int n);
// Block permutation replacing slot i of sigma's domain by a block of size m.
std::vector<int> blow_up(const std::vector<int>& sigma, int i, int m);

// Symmetric colored dg operad, stored skeletally: one component per ordered
// color tuple, the symmetric action as explicit chain isomorphisms generated
// by adjacent transpositions, and partial compositions as primitive data.
// Absent table entries mean zero complexes / zero maps.
struct ColoredDgOperad {
    CoeffRing ring = CoeffRing::rationals();
    std::vector<std::string> colors;
    int arity_bound = 0;
    std::map<CompKey, DgComplex> components;
    // (key, i): component(key) -> component(key with slots i, i+1 swapped)
    std::map<std::pair<CompKey, int>, ChainMap> sym;
    // (outer, i, inner): component(outer) (x) component(inner)
    //                      -> component(composed_key(outer, i, inner))
    std::map<std::tuple<CompKey, int, CompKey>, ChainMap> comps;
    std::map<int, Matrix> units;  // color -> degree-0 column in O((c),c)

    DgComplex component(const CompKey& key) const;
    ChainMap act_gen(const CompKey& key, int i) const;
    ChainMap act(const CompKey& key, const std::vector<int>& sigma) const;
    ChainMap comp(const CompKey& outer, int i, const CompKey& inner) const;
    // k[0] -> component((c), c) picking out the unit
    ChainMap unit_map(int color) const;

    void set_component(const CompKey& key, const DgComplex& c);
    void set_sym(const CompKey& key, int i, const ChainMap& f);
    void set_comp(const CompKey& outer, int i, const CompKey& inner, const ChainMap& f);
};

struct PlanarColoredOperad {
    CoeffRing ring = CoeffRing::rationals();
    std::vector<std::string> colors;
    int arity_bound = 0;
    std::map<CompKey, DgComplex> components;
    std::map<std::tuple<CompKey, int, CompKey>, ChainMap> comps;
    std::map<int, Matrix> units;

    DgComplex component(const CompKey& key) const;
    ChainMap comp(const CompKey& outer, int i, const CompKey& inner) const;
    ChainMap unit_map(int color) const;
};

struct AxiomReport {
    bool ok = true;
    std::string message;  // first counterexample, human readable
};

AxiomReport check_operad_axioms(const ColoredDgOperad& o);
AxiomReport check_planar_axioms(const PlanarColoredOperad& p);

// The full composition of eq-style gamma, assembled from partial compositions.
// f maps positions of c to positions of d (f[i] in [0, |d|)); returns the
// chain map O(d,e) (x) O(c|f^-1(0), d_0) (x) ... -> O(c,e).
ChainMap full_composition(const ColoredDgOperad& o, const std::vector<int>& f,
                          const std::vector<int>& c, const std::vector<int>& d, int e);

struct OperadMap {
    ColoredDgOperad source, target;
    std::vector<int> color_map;           // source color -> target color
    std::map<CompKey, ChainMap> blocks;   // per source component

    CompKey mapped(const CompKey& key) const;
    ChainMap block(const CompKey& key) const;
};

AxiomReport check_operad_map(const OperadMap& f);

// --- constructions ------------------------------------------------------------

PlanarColoredOperad forget_symmetry(const ColoredDgOperad& o);

// The direct sum decomposition (+)_theta P(c.theta, d) used for O^Sigma, with
// theta running over permutations in lexicographic order; summand theta is the
// planar component whose t-th planar input is colored slot theta[t].
MultiSum sigma_summand_layout(const PlanarColoredOperad& p, const CompKey& key);

ColoredDgOperad planar_to_symmetric(const PlanarColoredOperad& p);

// Counit O^Sigma -> O summing the ordering summands through the action.
OperadMap pi_projection(const ColoredDgOperad& o);

// Colors are doubled: (c, a) and (c, m).
int mo_color(int c, bool module_tag);
ColoredDgOperad module_operad(const ColoredDgOperad& o);

// A finite category from a presentation: objects 0..n_objects-1, generating
// arrows, and relations between composable generator words (listed first to
// last; an empty word is an identity).
struct FiniteCategory {
    int n_objects = 0;
    struct Gen {
        int src = 0, dst = 0;
    };
    std::vector<Gen> gens;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;

    // tabulated data
    std::vector<int> mor_src, mor_dst;
    std::vector<std::vector<int>> mor_word;  // shortest representative
    std::vector<int> ids;                    // identity morphism per object
    std::map<std::pair<int, std::vector<int>>, int> mor_of_word_;

    void tabulate(int word_cap = 8, int morphism_cap = 512);
    int n_morphisms() const { return static_cast<int>(mor_src.size()); }
    std::vector<int> hom(int a, int b) const;
    int compose(int first, int then) const;  // first: a->b, then: b->c

    static FiniteCategory terminal();
    static FiniteCategory arrow();              // two objects, one nonidentity
    static FiniteCategory commutative_square();
};

// Color (c, m) of R^C encoded as c * C.n_objects + m.
int power_color(const FiniteCategory& cat, int c, int m);
// Per-component summand layout: one copy of R(c,d) per tuple of arrows
// (phi_i: m_i -> n), tuples in lexicographic order over hom-list positions.
MultiSum power_summand_layout(const ColoredDgOperad& r, const FiniteCategory& cat,
                              const CompKey& key);
ColoredDgOperad operad_power_by_category(const ColoredDgOperad& r,
                                         const FiniteCategory& cat);

// An operad in finite simplicial sets, with compositions and symmetries given
// levelwise on formal simplices.
struct SimplicialOperad {
    int n_max = 0;
    std::vector<std::string> colors;
    int arity_bound = 0;
    std::map<CompKey, FiniteSimplicialSet> components;
    std::function<FormalSimplex(const CompKey&, int, const CompKey&,
                                const FormalSimplex&, const FormalSimplex&)>
        comp;
    std::function<FormalSimplex(const CompKey&, int, const FormalSimplex&)> sym;
    std::vector<int> units;  // nondegenerate vertex index per color
};

// Components become normalized chains; compositions C(comp) after the shuffle
// map, symmetries C(sym).
ColoredDgOperad chains_of_simplicial_operad(const SimplicialOperad& o,
                                            const CoeffRing& ring);

// --- equivalences ---------------------------------------------------------------

struct EquivReport {
    bool ok = true;
    std::string message;
    bool functor_checked = false;  // condition (b); only when colors biject
};

EquivReport check_weak_equivalence(const OperadMap& f);
EquivReport check_strong_equivalence(const OperadMap& f);

enum class SigmaState { certified, refuted, unknown };
struct SigmaCertificate {
    SigmaState state = SigmaState::unknown;
    std::string note;
};
// bases: per component and degree, columns forming a k[Aut(c)]-basis.
SigmaCertificate sigma_cofibrant_certificate(
    const ColoredDgOperad& o,
    const std::map<CompKey, std::map<int, Matrix>>& bases = {});

// --- the PROP P_O ---------------------------------------------------------------

struct PropHom {
    DgComplex hom;
    std::vector<std::vector<int>> maps;  // summand index -> f: I -> J
    MultiSum layout;                     // inclusions/projections per f
};
PropHom prop_hom(const ColoredDgOperad& o, const std::vector<int>& c,
                 const std::vector<int>& d);
// hom(d,e) (x) hom(c,d) -> hom(c,e)
GradedMap prop_compose(const ColoredDgOperad& o, const std::vector<int>& c,
                       const std::vector<int>& d, const std::vector<int>& e);

// --- builtins ---------------------------------------------------------------------

PlanarColoredOperad planar_com_operad(const CoeffRing& ring, int arity_bound,
                                      bool unital);
ColoredDgOperad com_operad(const CoeffRing& ring, int arity_bound, bool unital);
ColoredDgOperad ass_operad(const CoeffRing& ring, int arity_bound);

}  // namespace opforge
