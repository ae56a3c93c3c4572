#pragma once

#include "udf/kernel/scalar.hpp"
#include "udf/report.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace udf {

/// Canonical basis label of a bialgebra: a word in generator ids.
///
///  * commutative kinds (polynomial, free commutative monoid, matrix
///    coordinates): the monomial as a nondecreasing word, p1^2*p2 = {0,0,1}
///  * tensor algebra: the word itself
///  * finite monoid: {} for the unit, {i} for any other element i
///
/// Degree is the length. Keys order length-lex, which fixes the iteration
/// order of every sparse map.
struct BasisKey {
    std::vector<int> v;

    std::strong_ordering operator<=>(const BasisKey& other) const
    {
        if (auto c = v.size() <=> other.v.size(); c != 0)
            return c;
        return v <=> other.v;
    }
    bool operator==(const BasisKey&) const = default;
};

enum class BialgebraKind {
    PolynomialPrimitive, ///< k[g1..gn], generators primitive
    Monoid,              ///< k[M], M finite (table) or free commutative on the generators
    MatrixCoordinate,    ///< k[a,b,c,d], Δ x_ij = Σ_k x_ik ⊗ x_kj
    TensorPrimitive,     ///< T(X), generators primitive
};

std::string to_string(BialgebraKind kind);
BialgebraKind parse_bialgebra_kind(const std::string& text);

struct MonoidTable {
    std::vector<std::string> elements;
    std::string unit;
    /// product[i][j] = name of elements[i]·elements[j]
    std::vector<std::vector<std::string>> product;
};

/// One summand c · left ⊗ right of a generator coproduct override; left and
/// right are monomial texts over the generators ("p1^2*p2", "1").
struct CoproductTerm {
    Scalar coeff;
    std::string left;
    std::string right;
};

struct BialgebraSpec {
    BialgebraKind kind = BialgebraKind::PolynomialPrimitive;
    std::vector<std::string> generators;
    bool counital = true;
    /// Monoid kind only; absent means the free commutative monoid on the generators.
    std::optional<MonoidTable> monoid_table;
    /// Polynomial kinds only: replaces the coproduct of a generator. Used to
    /// build deliberately broken instances for the axiom checkers.
    std::map<std::string, std::vector<CoproductTerm>> coproduct_overrides;
    std::map<std::string, Scalar> counit_overrides;
};

class TensorElement;
class Bialgebra;
using BialgebraPtr = std::shared_ptr<const Bialgebra>;

struct CoproductEntry {
    BasisKey left;
    BasisKey right;
    Scalar coeff;
};
using Coproduct = std::vector<CoproductEntry>;

/// The coalgebra half of a bialgebra together with its unit. Code that must
/// not touch the product (the additive operad) is written against this.
class CoalgebraView {
public:
    explicit CoalgebraView(const Bialgebra& b) : b_(&b) {}
    const Coproduct& coproduct(const BasisKey& key) const;
    Scalar counit(const BasisKey& key) const;
    BasisKey unit_key() const;
    bool counital() const;

private:
    const Bialgebra* b_;
};

/// A bialgebra presentation realized up to an internal-degree cutoff.
/// Structure maps on basis keys are tabulated lazily and memoized; the
/// memo is guarded so concurrent first access is safe.
class Bialgebra : public std::enable_shared_from_this<Bialgebra> {
public:
    /// Use construct_bialgebra.
    Bialgebra(BialgebraSpec spec, int degree_cutoff);

    const BialgebraSpec& spec() const { return spec_; }
    BialgebraKind kind() const { return spec_.kind; }
    int degree_cutoff() const { return cutoff_; }
    bool counital() const { return spec_.counital; }
    const std::vector<std::string>& generator_names() const { return names_; }
    std::size_t generator_count() const { return names_.size(); }

    /// Group-like kinds (monoid, matrix coordinates) send a basis element of
    /// degree g to tensors whose every slot has degree g; primitive kinds
    /// split the degree among the slots.
    bool grouplike_graded() const;
    /// Monoid kind given by a finite table (keys have length <= 1 and no
    /// degree cutoff applies).
    bool finite_monoid_kind() const { return finite_monoid(); }

    BasisKey unit_key() const;
    BasisKey generator_key(std::size_t i) const;
    int degree(const BasisKey& key) const;
    std::string render(const BasisKey& key) const;
    /// Parses "1", "p1^2*p2" (polynomial kinds, free monoid), "e1*e2" (word),
    /// or an element name (finite monoid) into a key with its coefficient.
    std::pair<BasisKey, Scalar> parse_key(const std::string& text) const;

    /// Basis keys of exactly the given degree, in canonical order.
    std::vector<BasisKey> basis(int degree) const;
    std::vector<BasisKey> basis_up_to(int degree) const;

    /// Product of basis elements; throws CutoffOverflow above the cutoff.
    BasisKey multiply(const BasisKey& a, const BasisKey& b) const;
    const Coproduct& coproduct(const BasisKey& key) const;
    /// Throws DomainError for a non-counital bialgebra.
    Scalar counit(const BasisKey& key) const;

    CoalgebraView coalgebra() const { return CoalgebraView(*this); }

    // Convenience constructors for elements of B = B^{⊗1}.
    TensorElement one() const;
    TensorElement generator(const std::string& name) const;
    TensorElement element(const std::string& text) const;
    TensorElement basis_element(const BasisKey& key, const Scalar& c = 1) const;
    /// 1^{⊗n}
    TensorElement unit_tensor(std::size_t n) const;
    TensorElement zero(std::size_t arity) const;

    /// Product commutativity verified on basis pairs within the cutoff.
    bool commutative() const;

private:
    void build_tables();
    bool commutative_kind() const;
    bool finite_monoid() const { return spec_.kind == BialgebraKind::Monoid && spec_.monoid_table.has_value(); }
    const Coproduct& structural_coproduct(const BasisKey& key) const;
    Coproduct compute_coproduct(const BasisKey& key) const;
    Scalar structural_counit(const BasisKey& key) const;
    std::optional<BasisKey> lookup_name(const std::string& name) const;
    bool compute_commutative() const;

    BialgebraSpec spec_;
    int cutoff_;
    std::vector<std::string> names_;
    std::vector<Coproduct> generator_coproducts_;
    std::vector<Scalar> generator_counits_;
    std::map<BasisKey, Coproduct> coproduct_overrides_;
    std::map<BasisKey, Scalar> counit_overrides_;
    std::vector<std::vector<int>> monoid_product_; // finite monoid, by element index
    int monoid_unit_ = 0;

    mutable std::mutex memo_mutex_;
    mutable std::map<BasisKey, Coproduct> coproduct_memo_;
    mutable std::once_flag commutative_once_;
    mutable bool commutative_ = false;
};

/// Validates the presentation and returns a handle valid for all elements of
/// internal degree <= cutoff. Throws DomainError for a malformed monoid table
/// or duplicate generator names.
BialgebraPtr construct_bialgebra(BialgebraSpec spec, int degree_cutoff);

/// Coassociativity, counit law, multiplicativity of Δ and ε, checked on all
/// basis elements (and pairs) of degree <= cutoff.
Report check_axioms(const Bialgebra& b, int cutoff);

struct CocommutativityResult {
    bool cocommutative = true;
    std::optional<BasisKey> witness;
};

/// τΔ = Δ on every basis element of degree <= cutoff.
CocommutativityResult check_cocommutative(const Bialgebra& b, int cutoff);

} // namespace udf
