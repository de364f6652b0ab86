#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pqg/corep.hpp"
#include "pqg/walks.hpp"

namespace pqg {

struct Letter {
    enum Kind { unit = 0, u = 1, ustar = 2 };
    int kind = u;
    int a = 0, b = 0;  // unit: vertices (v, w); u and ustar: edges (e, f)
    auto operator<=>(const Letter&) const = default;
    bool operator==(const Letter&) const = default;
};
// A single unit letter or a composable run of u / u* letters; the empty word is the identity multiplier.
using Word = std::vector<Letter>;

struct NCPoly {
    std::map<Word, Scalar> terms;

    void add(const Word& w, const Scalar& c);
    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    NCPoly operator*(const Scalar& s) const;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const NCPoly& o) const { return terms == o.terms; }
};

using TensorPoly = std::map<std::pair<Word, Word>, Scalar>;

struct Relation {
    std::string kind;  // "uni1", "uni2" or "int"
    std::string label;
    NCPoly poly;
    Square grade;
    int degree = 0;
    bool assertable = true;  // false when a sum over edges is cut by the window
};

struct Presentation {
    ReciprocalWalk walk;
    std::vector<Relation> relations;
    std::map<std::pair<int, int>, size_t> int_relation;  // (e, f) -> index of u*_{e,f} - c u_{ebar,fbar}
    std::map<std::pair<int, int>, Scalar> star_coef;     // that c

    size_t u_generators() const { return walk.edges.size() * walk.edges.size(); }
};

Square letter_grade(const ReciprocalWalk& w, const Letter& l);
Square word_grade(const ReciprocalWalk& w, const Word& x);
int word_degree(const Word& x);
// Product in the partial algebra: units are absorbed and non-composable grades give nullopt.
std::optional<Word> multiply_words(const ReciprocalWalk& w, const Word& x, const Word& y);
NCPoly multiply(const ReciprocalWalk& w, const NCPoly& x, const NCPoly& y);
NCPoly poly_star(const NCPoly& x);
std::string word_str(const ReciprocalWalk& w, const Word& x);
std::string poly_str(const ReciprocalWalk& w, const NCPoly& x);
NCPoly word_poly(const Word& x, const Scalar& c = Scalar(1));
Word u_word(const std::vector<int>& top, const std::vector<int>& bottom);

Presentation build_presentation(const ReciprocalWalk& w);

struct WitnessTerm {
    Scalar coef;
    Word left;
    size_t relation = 0;
    Word right;
};
// x = sum coef * left * relation * right.
struct IdealWitness {
    std::vector<WitnessTerm> terms;
};
NCPoly replay(const Presentation& p, const IdealWitness& w);

// side 0: coef * replay(witness) (x) other; side 1: coef * other (x) replay(witness).
struct TensorWitnessTerm {
    Scalar coef;
    int side = 0;
    IdealWitness witness;
    NCPoly other;
};
struct TensorWitness {
    std::vector<TensorWitnessTerm> terms;
};
TensorPoly replay(const Presentation& p, const TensorWitness& w);

// Degree-bounded membership in the ideal generated by the assertable relations: x r y with
// deg x + deg r + deg y <= degree. Sound; a missing answer carries no claim.
class IdealSolver {
public:
    IdealSolver(const Presentation& p, int degree);
    ~IdealSolver();
    IdealSolver(const IdealSolver&) = delete;
    IdealSolver& operator=(const IdealSolver&) = delete;

    struct Reduction {
        NCPoly remainder;  // normal form: u-words outside the pivot set
        IdealWitness witness;  // replays to x - remainder
        bool complete = true;  // false when x has words beyond the degree bound
    };
    Reduction reduce(const NCPoly& x);
    std::optional<IdealWitness> member(const NCPoly& x);
    std::optional<TensorWitness> tensor_member(const TensorPoly& x);
    // Normal-form words spanning the quotient of the grade-k block.
    std::vector<Word> basis(const Square& k);
    const Presentation& presentation() const { return p_; }
    int degree() const { return degree_; }
    // Edge paths of length len starting at vertex v.
    const std::vector<std::vector<int>>& paths(int v, int len);

private:
    struct Block;
    struct Cache;
    Block& block(const Square& k);
    const Presentation& p_;
    int degree_;
    std::unique_ptr<Cache> cache_;
    std::map<Square, std::unique_ptr<Block>> blocks_;
    std::map<int, std::vector<std::vector<std::vector<int>>>> paths_;  // vertex -> length -> edge paths
};

struct GradedBasis {
    std::vector<Word> basis;
    size_t dim = 0;
};
GradedBasis graded_basis(const Presentation& p, const Square& k, int degree);
std::optional<IdealWitness> ideal_member(const Presentation& p, const NCPoly& x, int degree = 4);

// Generator-wise structure maps of the theorem: Delta(u_{e,f}) = sum_g u_{e,g} (x) u_{g,f},
// eps(u_{e,f}) = delta_{e,f}, S(u_{e,f}) = u*_{f,e}; S(u*_{e,f}) is read off the walk's weights.
TensorPoly coproduct(const Presentation& p, const NCPoly& x);
Scalar counit(const Presentation& p, const NCPoly& x);
NCPoly antipode(const Presentation& p, const NCPoly& x);

Report check_hopf_wellposed(const Presentation& p, int degree = 4);

struct ColoredMatrix {
    std::vector<std::string> colors;
    std::map<std::pair<std::string, std::string>, NCPoly> entries;  // u_{a,b} = sum_{v,w} (u_{a,b})_{v,w}
    Report report;
};
ColoredMatrix colored_matrix(const Presentation& p, const ColoredWalk& cw, int degree = 4);

// Relations are instantiated with claimed_q (default q) so that perturbed claims can be tested.
Report dynamical_su2_report(const Scalar& q, const Scalar& x, long lo, long hi, int degree,
                            const std::optional<Scalar>& claimed_q = std::nullopt);

// Degree-filtered partial Hopf data on the quotient bases, with the generating corepresentation.
struct TruncatedAlgebra {
    PartialHopfData data;
    Corep generating;
};
TruncatedAlgebra truncate(const Presentation& p, int degree);

json presentation_to_json(const Presentation& p);
json witness_to_json(const Presentation& p, const IdealWitness& w);

}  // namespace pqg
