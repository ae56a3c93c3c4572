#include "udf/bialgebra/bialgebra.hpp"

#include "udf/bialgebra/tensor.hpp"
#include "udf/error.hpp"
#include "udf/kernel/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace udf {

namespace {

const std::vector<std::string> kMatrixNames = {"a", "b", "c", "d"};

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

bool looks_numeric(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' && c != '+')
            return false;
    return true;
}

} // namespace

std::string to_string(BialgebraKind kind)
{
    switch (kind) {
    case BialgebraKind::PolynomialPrimitive:
        return "polynomial-primitive";
    case BialgebraKind::Monoid:
        return "monoid";
    case BialgebraKind::MatrixCoordinate:
        return "matrix-coordinate";
    case BialgebraKind::TensorPrimitive:
        return "tensor-primitive";
    }
    return "?";
}

BialgebraKind parse_bialgebra_kind(const std::string& text)
{
    if (text == "polynomial-primitive")
        return BialgebraKind::PolynomialPrimitive;
    if (text == "monoid")
        return BialgebraKind::Monoid;
    if (text == "matrix-coordinate")
        return BialgebraKind::MatrixCoordinate;
    if (text == "tensor-primitive")
        return BialgebraKind::TensorPrimitive;
    throw DomainError("unknown bialgebra kind '" + text + "'");
}

const Coproduct& CoalgebraView::coproduct(const BasisKey& key) const { return b_->coproduct(key); }
Scalar CoalgebraView::counit(const BasisKey& key) const { return b_->counit(key); }
BasisKey CoalgebraView::unit_key() const { return b_->unit_key(); }
bool CoalgebraView::counital() const { return b_->counital(); }

Bialgebra::Bialgebra(BialgebraSpec spec, int degree_cutoff) : spec_(std::move(spec)), cutoff_(degree_cutoff)
{
    if (cutoff_ < 1)
        throw DomainError("degree cutoff must be at least 1");
    build_tables();
}

bool Bialgebra::commutative_kind() const
{
    return spec_.kind == BialgebraKind::PolynomialPrimitive || spec_.kind == BialgebraKind::MatrixCoordinate ||
           (spec_.kind == BialgebraKind::Monoid && !spec_.monoid_table);
}

bool Bialgebra::grouplike_graded() const
{
    return spec_.kind == BialgebraKind::Monoid || spec_.kind == BialgebraKind::MatrixCoordinate;
}

void Bialgebra::build_tables()
{
    if (spec_.kind == BialgebraKind::MatrixCoordinate) {
        if (spec_.generators.empty())
            spec_.generators = kMatrixNames;
        if (spec_.generators.size() != 4)
            throw DomainError("the matrix-coordinate bialgebra has exactly four generators");
    }
    if (finite_monoid()) {
        const MonoidTable& t = *spec_.monoid_table;
        names_ = t.elements;
    } else {
        names_ = spec_.generators;
    }
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (trim(n).empty() || n == "1" || looks_numeric(n))
            throw DomainError("invalid generator name '" + n + "'");
        if (!seen.insert(n).second)
            throw DomainError("duplicate generator name '" + n + "'");
    }

    if (finite_monoid()) {
        const MonoidTable& t = *spec_.monoid_table;
        const std::size_t n = t.elements.size();
        if (n == 0)
            throw DomainError("empty monoid table");
        auto index_of = [&](const std::string& name) {
            auto it = std::find(t.elements.begin(), t.elements.end(), name);
            if (it == t.elements.end())
                throw DomainError("monoid table mentions unknown element '" + name + "'");
            return static_cast<int>(it - t.elements.begin());
        };
        monoid_unit_ = index_of(t.unit);
        if (t.product.size() != n)
            throw DomainError("monoid table has wrong number of rows");
        monoid_product_.assign(n, std::vector<int>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (t.product[i].size() != n)
                throw DomainError("monoid table row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < n; ++j)
                monoid_product_[i][j] = index_of(t.product[i][j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const int ii = static_cast<int>(i);
            if (monoid_product_[monoid_unit_][i] != ii || monoid_product_[i][monoid_unit_] != ii)
                throw DomainError("monoid table: '" + t.unit + "' is not a two-sided unit");
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (monoid_product_[monoid_product_[i][j]][k] != monoid_product_[i][monoid_product_[j][k]])
                        throw DomainError("monoid table is not associative at (" + t.elements[i] + "," +
                                          t.elements[j] + "," + t.elements[k] + ")");
        }
        return;
    }

    const int n = static_cast<int>(names_.size());
    generator_coproducts_.resize(n);
    generator_counits_.assign(n, Scalar(0));
    for (int i = 0; i < n; ++i) {
        const BasisKey g{{i}};
        const BasisKey one{};
        switch (spec_.kind) {
        case BialgebraKind::PolynomialPrimitive:
        case BialgebraKind::TensorPrimitive:
            generator_coproducts_[i] = {{g, one, Scalar(1)}, {one, g, Scalar(1)}};
            break;
        case BialgebraKind::Monoid:
            generator_coproducts_[i] = {{g, g, Scalar(1)}};
            generator_counits_[i] = 1;
            break;
        case BialgebraKind::MatrixCoordinate: {
            // x_rc with index i = 2r + c; Δ x_rc = Σ_k x_rk ⊗ x_kc
            const int r = i / 2, c = i % 2;
            for (int k = 0; k < 2; ++k)
                generator_coproducts_[i].push_back({BasisKey{{2 * r + k}}, BasisKey{{2 * k + c}}, Scalar(1)});
            generator_counits_[i] = (r == c) ? 1 : 0;
            break;
        }
        }
    }

    const bool overridable =
        spec_.kind == BialgebraKind::PolynomialPrimitive || spec_.kind == BialgebraKind::MatrixCoordinate;
    if (!overridable && (!spec_.coproduct_overrides.empty() || !spec_.counit_overrides.empty()))
        throw DomainError("structure-map overrides are only supported for polynomial kinds");
    for (const auto& [name, terms] : spec_.coproduct_overrides) {
        auto g = lookup_name(name);
        if (!g)
            throw DomainError("override for unknown generator '" + name + "'");
        Coproduct cp;
        for (const auto& term : terms) {
            auto [l, cl] = parse_key(term.left);
            auto [r, cr] = parse_key(term.right);
            cp.push_back({l, r, term.coeff * cl * cr});
        }
        coproduct_overrides_[*g] = std::move(cp);
    }
    for (const auto& [name, value] : spec_.counit_overrides) {
        auto g = lookup_name(name);
        if (!g)
            throw DomainError("override for unknown generator '" + name + "'");
        counit_overrides_[*g] = value;
    }
}

BasisKey Bialgebra::unit_key() const { return BasisKey{}; }

BasisKey Bialgebra::generator_key(std::size_t i) const
{
    if (i >= names_.size())
        throw DomainError("generator index out of range");
    if (finite_monoid() && static_cast<int>(i) == monoid_unit_)
        return BasisKey{};
    return BasisKey{{static_cast<int>(i)}};
}

int Bialgebra::degree(const BasisKey& key) const { return static_cast<int>(key.v.size()); }

std::string Bialgebra::render(const BasisKey& key) const
{
    if (key.v.empty())
        return "1";
    if (finite_monoid())
        return names_.at(static_cast<std::size_t>(key.v[0]));
    std::string out;
    std::size_t i = 0;
    while (i < key.v.size()) {
        std::size_t j = i;
        while (j < key.v.size() && key.v[j] == key.v[i])
            ++j;
        if (!out.empty())
            out += '*';
        out += names_.at(static_cast<std::size_t>(key.v[i]));
        if (j - i > 1)
            out += '^' + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::optional<BasisKey> Bialgebra::lookup_name(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return generator_key(static_cast<std::size_t>(it - names_.begin()));
}

std::pair<BasisKey, Scalar> Bialgebra::parse_key(const std::string& text) const
{
    std::string s = trim(text);
    Scalar coeff = 1;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        if (s[0] == '-')
            coeff = -1;
        s = trim(s.substr(1));
    }
    if (s.empty())
        throw DomainError("empty basis element");
    BasisKey key = unit_key();
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find('*', pos);
        if (next == std::string::npos)
            next = s.size();
        std::string factor = trim(std::string_view(s).substr(pos, next - pos));
        if (factor.empty())
            throw DomainError("malformed product '" + text + "'");
        std::string name = factor;
        long exponent = 1;
        if (auto caret = factor.find('^'); caret != std::string::npos) {
            name = trim(factor.substr(0, caret));
            try {
                exponent = std::stol(factor.substr(caret + 1));
            } catch (const std::exception&) {
                throw DomainError("bad exponent in '" + factor + "'");
            }
            if (exponent < 0)
                throw DomainError("negative exponent in '" + factor + "'");
        }
        if (auto g = lookup_name(name)) {
            for (long e = 0; e < exponent; ++e)
                key = multiply(key, *g);
        } else if (looks_numeric(name)) {
            Scalar c = parse_scalar(name);
            Scalar p = 1;
            for (long e = 0; e < exponent; ++e)
                p *= c;
            coeff *= p;
        } else {
            throw DomainError("unknown generator '" + name + "'");
        }
        pos = next + 1;
    }
    return {key, coeff};
}

std::vector<BasisKey> Bialgebra::basis(int degree) const
{
    std::vector<BasisKey> out;
    if (degree < 0)
        return out;
    if (finite_monoid()) {
        if (degree == 0)
            out.push_back(BasisKey{});
        else if (degree == 1)
            for (int i = 0; i < static_cast<int>(names_.size()); ++i)
                if (i != monoid_unit_)
                    out.push_back(BasisKey{{i}});
        return out;
    }
    const int n = static_cast<int>(names_.size());
    if (n == 0)
        return degree == 0 ? std::vector<BasisKey>{BasisKey{}} : out;
    const bool sorted = commutative_kind();
    std::vector<int> word(static_cast<std::size_t>(degree), 0);
    while (true) {
        out.push_back(BasisKey{word});
        // odometer; in the sorted case every position restarts at its left neighbour
        int pos = degree - 1;
        while (pos >= 0 && word[pos] == n - 1)
            --pos;
        if (pos < 0)
            break;
        ++word[pos];
        for (int j = pos + 1; j < degree; ++j)
            word[j] = sorted ? word[pos] : 0;
    }
    return out;
}

std::vector<BasisKey> Bialgebra::basis_up_to(int degree) const
{
    std::vector<BasisKey> out;
    for (int g = 0; g <= degree; ++g) {
        auto part = basis(g);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

BasisKey Bialgebra::multiply(const BasisKey& a, const BasisKey& b) const
{
    if (finite_monoid()) {
        const int ia = a.v.empty() ? monoid_unit_ : a.v[0];
        const int ib = b.v.empty() ? monoid_unit_ : b.v[0];
        const int r = monoid_product_[ia][ib];
        return r == monoid_unit_ ? BasisKey{} : BasisKey{{r}};
    }
    if (static_cast<int>(a.v.size() + b.v.size()) > cutoff_)
        throw CutoffOverflow("product " + render(a) + " * " + render(b) + " exceeds degree cutoff " +
                             std::to_string(cutoff_));
    BasisKey r;
    r.v.reserve(a.v.size() + b.v.size());
    if (commutative_kind())
        std::merge(a.v.begin(), a.v.end(), b.v.begin(), b.v.end(), std::back_inserter(r.v));
    else {
        r.v = a.v;
        r.v.insert(r.v.end(), b.v.begin(), b.v.end());
    }
    return r;
}

const Coproduct& Bialgebra::coproduct(const BasisKey& key) const
{
    if (!coproduct_overrides_.empty())
        if (auto it = coproduct_overrides_.find(key); it != coproduct_overrides_.end())
            return it->second;
    return structural_coproduct(key);
}

const Coproduct& Bialgebra::structural_coproduct(const BasisKey& key) const
{
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = coproduct_memo_.find(key); it != coproduct_memo_.end())
            return it->second;
    }
    Coproduct value = compute_coproduct(key);
    std::lock_guard lock(memo_mutex_);
    return coproduct_memo_.try_emplace(key, std::move(value)).first->second;
}

Coproduct Bialgebra::compute_coproduct(const BasisKey& key) const
{
    if (key.v.empty())
        return {{BasisKey{}, BasisKey{}, Scalar(1)}};
    if (spec_.kind == BialgebraKind::Monoid)
        return {{key, key, Scalar(1)}};
    if (key.v.size() == 1)
        return generator_coproducts_.at(static_cast<std::size_t>(key.v[0]));
    // Δ(g·w) = Δ(g)Δ(w), structural tables only
    const BasisKey rest{std::vector<int>(key.v.begin() + 1, key.v.end())};
    const Coproduct& dh = generator_coproducts_.at(static_cast<std::size_t>(key.v[0]));
    const Coproduct& dr = structural_coproduct(rest);
    std::map<std::pair<BasisKey, BasisKey>, Scalar> acc;
    for (const auto& x : dh)
        for (const auto& y : dr) {
            auto& c = acc[{multiply(x.left, y.left), multiply(x.right, y.right)}];
            c += x.coeff * y.coeff;
        }
    Coproduct out;
    for (auto& [k, c] : acc)
        if (!is_zero(c))
            out.push_back({k.first, k.second, c});
    return out;
}

Scalar Bialgebra::structural_counit(const BasisKey& key) const
{
    if (spec_.kind == BialgebraKind::Monoid)
        return 1;
    Scalar r = 1;
    for (int g : key.v) {
        r *= generator_counits_.at(static_cast<std::size_t>(g));
        if (is_zero(r))
            break;
    }
    return r;
}

Scalar Bialgebra::counit(const BasisKey& key) const
{
    if (!counital())
        throw DomainError("counit requested on a non-counital bialgebra");
    if (!counit_overrides_.empty())
        if (auto it = counit_overrides_.find(key); it != counit_overrides_.end())
            return it->second;
    return structural_counit(key);
}

bool Bialgebra::compute_commutative() const
{
    if (finite_monoid()) {
        for (std::size_t i = 0; i < monoid_product_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (monoid_product_[i][j] != monoid_product_[j][i])
                    return false;
        return true;
    }
    const int top = std::min(cutoff_, 4);
    for (int da = 1; da < top; ++da)
        for (const auto& a : basis(da))
            for (int db = 1; da + db <= top; ++db)
                for (const auto& b : basis(db))
                    if (multiply(a, b) != multiply(b, a))
                        return false;
    return true;
}

bool Bialgebra::commutative() const
{
    std::call_once(commutative_once_, [this] { commutative_ = compute_commutative(); });
    return commutative_;
}

TensorElement Bialgebra::zero(std::size_t arity) const { return TensorElement(shared_from_this(), arity); }

TensorElement Bialgebra::basis_element(const BasisKey& key, const Scalar& c) const
{
    if (!finite_monoid() && degree(key) > cutoff_)
        throw CutoffOverflow("basis element " + render(key) + " exceeds degree cutoff");
    TensorElement t(shared_from_this(), 1);
    t.add_term({key}, c);
    return t;
}

TensorElement Bialgebra::one() const { return basis_element(unit_key()); }

TensorElement Bialgebra::unit_tensor(std::size_t n) const
{
    TensorElement t(shared_from_this(), n);
    t.add_term(TensorKey(n, unit_key()), Scalar(1));
    return t;
}

TensorElement Bialgebra::generator(const std::string& name) const
{
    auto g = lookup_name(name);
    if (!g)
        throw DomainError("unknown generator '" + name + "'");
    return basis_element(*g);
}

TensorElement Bialgebra::element(const std::string& text) const
{
    TensorElement out = zero(1);
    for (const auto& term : split_sum(text)) {
        auto [key, c] = parse_key(term);
        out.add_term({key}, c);
    }
    return out;
}

BialgebraPtr construct_bialgebra(BialgebraSpec spec, int degree_cutoff)
{
    return std::make_shared<const Bialgebra>(std::move(spec), degree_cutoff);
}

Report check_axioms(const Bialgebra& b, int cutoff)
{
    Report report;
    report.subject = "bialgebra axioms (" + to_string(b.kind()) + ", degree <= " + std::to_string(cutoff) + ")";
    const int top = std::min(cutoff, b.degree_cutoff());
    const auto keys = b.basis_up_to(top);

    std::string coassoc_witness, counit_witness, delta_mult_witness, eps_mult_witness;
    for (const auto& k : keys) {
        const TensorElement x = b.basis_element(k);
        const TensorElement dx = slot_apply(SlotMap::Coproduct, 1, x);
        if (coassoc_witness.empty() &&
            slot_apply(SlotMap::Coproduct, 1, dx) != slot_apply(SlotMap::Coproduct, 2, dx))
            coassoc_witness = b.render(k);
        if (b.counital() && counit_witness.empty() &&
            (slot_apply(SlotMap::Counit, 1, dx) != x || slot_apply(SlotMap::Counit, 2, dx) != x))
            counit_witness = b.render(k);
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = 0; j < keys.size(); ++j) {
            const auto& a = keys[i];
            const auto& c = keys[j];
            if (b.degree(a) + b.degree(c) > top)
                continue;
            const BasisKey ac = b.multiply(a, c);
            const TensorElement lhs = slot_apply(SlotMap::Coproduct, 1, b.basis_element(ac));
            const TensorElement rhs = slot_apply(SlotMap::Coproduct, 1, b.basis_element(a)) *
                                      slot_apply(SlotMap::Coproduct, 1, b.basis_element(c));
            if (delta_mult_witness.empty() && lhs != rhs)
                delta_mult_witness = "(" + b.render(a) + ", " + b.render(c) + ")";
            if (b.counital() && eps_mult_witness.empty() && b.counit(ac) != b.counit(a) * b.counit(c))
                eps_mult_witness = "(" + b.render(a) + ", " + b.render(c) + ")";
        }

    report.add("coassociativity", coassoc_witness.empty(), "(Δ⊗id)Δ = (id⊗Δ)Δ", coassoc_witness);
    if (b.counital()) {
        report.add("counit", counit_witness.empty(), "(ε⊗id)Δ = id = (id⊗ε)Δ", counit_witness);
        report.add("counit multiplicative", eps_mult_witness.empty() && b.counit(b.unit_key()) == 1,
                   "ε(xy) = ε(x)ε(y), ε(1) = 1", eps_mult_witness);
    }
    const bool unit_ok = slot_apply(SlotMap::Coproduct, 1, b.one()) == b.unit_tensor(2);
    report.add("coproduct multiplicative", delta_mult_witness.empty() && unit_ok, "Δ(xy) = Δ(x)Δ(y), Δ1 = 1⊗1",
               unit_ok ? delta_mult_witness : "1");
    return report;
}

CocommutativityResult check_cocommutative(const Bialgebra& b, int cutoff)
{
    const int top = std::min(cutoff, b.degree_cutoff());
    for (const auto& k : b.basis_up_to(top)) {
        const TensorElement dx = slot_apply(SlotMap::Coproduct, 1, b.basis_element(k));
        if (flip(dx) != dx)
            return {false, k};
    }
    return {true, std::nullopt};
}

} // namespace udf
