#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pqg/partial_hopf.hpp"

namespace pqg {

struct Irrep {
    std::string name;
    int left = 0;   // hyperobject of the row grading
    int right = 0;  // hyperobject of the column grading
    int dual = 0;   // index of the conjugate irreducible
};

// One fusion channel b (x) c -> a; several channels with the same (b, c, a) encode multiplicity.
struct FusionChannel {
    int b = 0, c = 0, a = 0;
};

// Concrete fiber functor data: for each irreducible a the spaces F_kl(a) (orthonormal
// bases, only dimensions stored), fusion coisometries and duality maps.
struct FiberData {
    std::vector<std::string> objects;
    std::vector<int> hyper;  // object -> hyperobject
    std::vector<std::string> hyper_names;
    std::vector<Irrep> irreps;
    std::vector<int> unit_of;  // hyperobject -> its unit irreducible

    std::map<std::tuple<int, int, int>, size_t> dims;  // (a, k, l) -> dim F_kl(a)
    std::vector<FusionChannel> channels;
    // (channel, r, s, t) -> J: F_rt(a) <- F_rs(b) (x) F_st(c), columns row-major.
    std::map<std::tuple<int, int, int, int>, Mat> iso;
    // (a, k, l) -> C: dim F_kl(a) x dim F_lk(dual a), and its inverse E.
    std::map<std::tuple<int, int, int>, Mat> coev;
    std::map<std::tuple<int, int, int>, Mat> ev;

    int num_objects() const { return static_cast<int>(objects.size()); }
    int num_irreps() const { return static_cast<int>(irreps.size()); }
    size_t dim(int a, int k, int l) const;
    bool is_unit(int a) const;
    int irrep_index(const std::string& name) const;
};

struct FiniteGroup {
    std::vector<std::string> names;
    std::vector<std::vector<int>> mul;
    int identity = 0;
    int inverse(int g) const;
};

FiniteGroup cyclic_group(int n);

FiberData pointed_group_fiber(const FiniteGroup& g);
// Unit-only data over one hyperobject: the function algebra of the pair groupoid.
FiberData pair_groupoid_fiber(int n);
// One hyperobject per object and irreducibles u_ab with F_kl(u_ab) = delta: the groupoid algebra M_n.
FiberData groupoid_fiber(int n);

// Report keys: fiber.unit, fiber.grading, fiber.dual, fiber.unitary, fiber.cocycle, fiber.duality.
Report validate_fiber_data(const FiberData& f);
// Per irreducible a: the scalar c with C^{kl}_a = c * conj(J(a, dual a -> 1)_{klk}) for all k, l.
std::map<int, Scalar> ev_normalization(const FiberData& f);

struct Coefficient {
    int irrep = 0;
    size_t i = 0, j = 0;  // row index in F_kl(a), column index in F_mn(a)
};

struct Reconstruction {
    PartialHopfData hopf;
    std::map<Square, std::vector<Coefficient>> coeff;
    // Offset of the coefficients of irreducible a inside block K.
    std::map<std::pair<Square, int>, size_t> offset;
};

Reconstruction reconstruct(const FiberData& f);

json fiber_to_json(const FiberData& f);
FiberData fiber_from_json(const json& j);

// Irreducible count, block dimensions and fusion multiplicities of the reconstruction,
// recovered through corepresentation decomposition (implemented alongside corep).
struct RoundtripResult {
    Report report;
    std::map<std::tuple<int, int, int>, size_t> fusion;  // (b, c, a) -> multiplicity found
    size_t irreducible_count = 0;
};
RoundtripResult roundtrip_check(const FiberData& f);

}  // namespace pqg
