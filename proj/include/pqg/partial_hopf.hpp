#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pqg/grading.hpp"
#include "pqg/report.hpp"

namespace pqg {

// Element of the total algebra: one coefficient vector per homogeneous block.
using Elem = std::map<Square, Vec>;
// Element of A (x) A: coefficient vectors over product bases, row-major.
using Tensor = std::map<std::pair<Square, Square>, Vec>;

struct PartialHopfData {
    std::vector<std::string> labels;  // object i is printed as labels[i]
    std::map<Square, size_t> dims;    // nonzero blocks only

    // mult[(K, L)]: dim(KL) x (dim K * dim L), column i*dim(L)+j.
    std::map<std::pair<Square, Square>, Mat> mult;
    // comult[(K, r, s)]: (dim(k l; r s) * dim(r s; m n)) x dim K.
    std::map<std::tuple<Square, int, int>, Mat> comult;
    std::map<Square, Vec> counit;  // on blocks (k l; k l)
    std::map<Pair, Vec> unit;      // 1(k|m) in A(k k; m m)
    std::optional<std::map<Square, Mat>> antipode;  // A(K) -> A(K^circ-bullet)
    std::optional<std::map<Square, Mat>> star;      // antilinear A(k l; m n) -> A(l k; n m)
    std::optional<std::map<Square, Vec>> integral;  // on blocks (k k; m m)

    std::set<int> boundary;  // objects whose neighbourhood was cut off
    int max_degree = -1;     // >= 0 for a degree-filtered truncation
    std::map<Square, std::vector<int>> degree;
    std::map<Square, std::vector<std::string>> names;

    int num_objects() const { return static_cast<int>(labels.size()); }
    size_t dim(const Square& k) const;
    size_t total_dim() const;
    int deg(const Square& k, size_t i) const;
    std::string key(const Square& k) const;
    Square parse_key(const std::string& s) const;
    int object(const std::string& label) const;
    bool touches_boundary(std::initializer_list<int> objs) const;
};

Elem basis_elem(const PartialHopfData& d, const Square& k, size_t i);
Elem unit_elem(const PartialHopfData& d, int k, int m);
Elem lambda_elem(const PartialHopfData& d, int p);  // sum over l of 1(p|l)
Elem rho_elem(const PartialHopfData& d, int p);     // sum over k of 1(k|p)

bool elem_zero(const Elem& a);
bool elem_equal(const Elem& a, const Elem& b);
Elem elem_add(const Elem& a, const Elem& b);
Elem elem_scale(const Elem& a, const Scalar& s);
bool tensor_zero(const Tensor& t);
bool tensor_equal(const Tensor& a, const Tensor& b);
Tensor tensor_add(const Tensor& a, const Tensor& b);
Tensor tensor_scale(const Tensor& a, const Scalar& s);
Tensor tensor_of(const PartialHopfData& d, const Elem& a, const Elem& b);

// Products throw Error("truncated") when a filtered datum lacks the product.
Mat mult_matrix(const PartialHopfData& d, const Square& k, const Square& l);
Vec multiply_basis(const PartialHopfData& d, const Square& k, size_t i, const Square& l, size_t j);
Elem multiply(const PartialHopfData& d, const Elem& a, const Elem& b);
Mat comult_matrix(const PartialHopfData& d, const Square& k, int r, int s);
Tensor comultiply(const PartialHopfData& d, const Elem& a, int r, int s);
Tensor comultiply_total(const PartialHopfData& d, const Elem& a);
Scalar counit(const PartialHopfData& d, const Elem& a);
Scalar integral(const PartialHopfData& d, const Elem& a);
Elem antipode(const PartialHopfData& d, const Elem& a);
Elem star(const PartialHopfData& d, const Elem& a);
Tensor tensor_multiply(const PartialHopfData& d, const Tensor& x, const Tensor& y);
Elem contract(const PartialHopfData& d, const Tensor& t);  // sum of x*y over x (x) y
Tensor tensor_flip(const PartialHopfData& d, const Tensor& t);
// Apply a (block -> element) map to one leg; leg is 0 or 1.
using BlockFn = std::function<Elem(const Square&, const Vec&)>;
Tensor tensor_apply(const PartialHopfData& d, const Tensor& t, int leg, const BlockFn& f);
Elem leg_functional(const PartialHopfData& d, const Tensor& t, int leg,
                    const std::function<Scalar(const Elem&)>& f);

Report verify_partial_algebra(const PartialHopfData& d);
Report verify_partial_bialgebra(const PartialHopfData& d);
Report verify_antipode(const PartialHopfData& d);
Report verify_canonical_maps(const PartialHopfData& d);
Report verify_integral(const PartialHopfData& d);
Report verify_star(const PartialHopfData& d);
Report verify_all(const PartialHopfData& d);

// Multiplier coefficient families: coefficient of lambda_p, rho_p, rho_l (x) lambda_l.
struct Projections {
    std::map<int, Scalar> pi_left;
    std::map<int, Scalar> pi_right;
    std::map<int, Scalar> e;
};
Projections compute_projections(const PartialHopfData& d, const Elem& a);
// Pi^L read off from a_(1) S(a_(2)); nullopt when that element is not a lambda family.
std::optional<std::map<int, Scalar>> pi_left_via_antipode(const PartialHopfData& d, const Elem& a);
std::optional<std::map<int, Scalar>> pi_right_via_antipode(const PartialHopfData& d, const Elem& a);
std::map<int, Scalar> family_product(const std::map<int, Scalar>& a, const std::map<int, Scalar>& b);

std::vector<std::vector<int>> hyperobject_partition(const PartialHopfData& d);

enum class LinkMode { linking, colinking };
Report verify_linking_structures(const PartialHopfData& d, const std::vector<int>& part1,
                                 const std::vector<int>& part2, LinkMode mode);

// Tensor product of two partial Hopf data over the product object set.
PartialHopfData product(const PartialHopfData& a, const PartialHopfData& b);

json to_json(const PartialHopfData& d);
PartialHopfData hopf_from_json(const json& j);

json scalar_array(const Vec& v);
json matrix_json(const Mat& m);
// Integers and string literals only; JSON floats are rejected.
Scalar scalar_from_json(const json& j, const std::string& where);
Vec vec_from_json(const json& j, const std::string& where);
Mat mat_from_json(const json& j, const std::string& where);

}  // namespace pqg
