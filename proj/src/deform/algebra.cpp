#include "udf/deform/algebra.hpp"

#include "udf/error.hpp"

#include <algorithm>
#include <set>

namespace udf {

std::string to_string(AlgebraKind kind)
{
    return kind == AlgebraKind::PolynomialTruncated ? "polynomial-truncated" : "finite-dimensional";
}

namespace {

void validate_names(const std::vector<std::string>& names, const char* what)
{
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty() || n == "1" || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
            throw DomainError(std::string("bad ") + what + " name '" + n + "'");
        if (n.rfind("d_", 0) == 0)
            throw DomainError(std::string(what) + " names may not start with d_ (reserved for derivatives)");
        if (!seen.insert(n).second)
            throw DomainError(std::string("duplicate ") + what + " '" + n + "'");
    }
}

// All monomials in v variables of degree exactly g.
void monomials_of_degree(int v, int g, std::vector<Monomial>& out)
{
    std::vector<int> e(static_cast<std::size_t>(v), 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == v - 1) {
            e[static_cast<std::size_t>(var)] = left;
            std::vector<std::pair<int, int>> pw;
            for (int i = 0; i < v; ++i)
                if (e[static_cast<std::size_t>(i)])
                    pw.emplace_back(i, e[static_cast<std::size_t>(i)]);
            out.emplace_back(std::move(pw));
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[static_cast<std::size_t>(var)] = k;
            self(self, var + 1, left - k);
        }
    };
    if (v == 0) {
        if (g == 0)
            out.emplace_back();
        return;
    }
    rec(rec, 0, g);
}

Scalar parse_sign(std::string& term)
{
    Scalar s = 1;
    while (!term.empty() && (term[0] == '-' || term[0] == '+' || term[0] == ' ')) {
        if (term[0] == '-')
            s = -s;
        term.erase(0, 1);
    }
    if (term.empty())
        throw DomainError("dangling sign");
    return s;
}

} // namespace

AlgebraPtr Algebra::polynomial(std::vector<std::string> variables, int cutoff)
{
    validate_names(variables, "variable");
    if (cutoff < 0)
        throw DomainError("negative degree cutoff");
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->kind_ = AlgebraKind::PolynomialTruncated;
    a->names_ = std::move(variables);
    a->cutoff_ = cutoff;
    for (int g = 0; g <= cutoff; ++g)
        monomials_of_degree(static_cast<int>(a->names_.size()), g, a->basis_);
    a->index_basis();
    return a;
}

AlgebraPtr Algebra::monomial_quotient(std::vector<std::string> variables, const std::vector<std::string>& ideal)
{
    validate_names(variables, "variable");
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->kind_ = AlgebraKind::FiniteDimensional;
    a->names_ = std::move(variables);
    for (const auto& text : ideal) {
        Polynomial m = parse_monomial_term(text, a->names_);
        if (m.terms().size() != 1)
            throw DomainError("ideal generator '" + text + "' is not a monomial");
        if (m.terms().begin()->first.is_one())
            throw DomainError("the ideal contains 1");
        a->ideal_.push_back(m.terms().begin()->first);
    }
    // finite-dimensional iff some power of every variable lies in the ideal
    for (std::size_t v = 0; v < a->names_.size(); ++v) {
        bool bounded = std::any_of(a->ideal_.begin(), a->ideal_.end(), [&](const Monomial& m) {
            return m.powers().size() == 1 && m.powers()[0].first == static_cast<int>(v);
        });
        if (!bounded)
            throw DomainError("k[...]/I is infinite-dimensional: no power of " + a->names_[v] + " in I");
    }
    for (int g = 0;; ++g) {
        std::vector<Monomial> deg;
        monomials_of_degree(static_cast<int>(a->names_.size()), g, deg);
        bool any = false;
        for (auto& m : deg)
            if (!a->killed(m)) {
                a->basis_.push_back(m);
                a->cutoff_ = g;
                any = true;
            }
        if (!any)
            break;
    }
    a->index_basis();
    return a;
}

AlgebraPtr Algebra::finite(std::vector<std::string> names, const std::string& unit, std::vector<std::vector<AlgElement>> table)
{
    validate_names(names, "basis");
    auto it = std::find(names.begin(), names.end(), unit);
    if (it == names.end())
        throw DomainError("unit '" + unit + "' is not a basis element");
    const std::size_t n = names.size();
    if (table.size() != n || std::any_of(table.begin(), table.end(), [&](const auto& row) { return row.size() != n; }))
        throw DomainError("structure table must be " + std::to_string(n) + "x" + std::to_string(n));
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->kind_ = AlgebraKind::FiniteDimensional;
    a->variables_ = false;
    a->names_ = std::move(names);
    a->unit_index_ = static_cast<int>(it - a->names_.begin());
    a->cutoff_ = n > 1 ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i)
        a->basis_.push_back(static_cast<int>(i) == a->unit_index_ ? Monomial() : Monomial::variable(static_cast<int>(i)));
    a->index_basis();
    a->table_ = std::move(table);
    for (const auto& row : a->table_)
        for (const auto& e : row)
            for (const auto& [m, c] : e.terms())
                if (!a->in_basis(m))
                    throw DomainError("structure table entry outside the basis");
    // unit and associativity on the whole basis
    const AlgElement one = a->one();
    for (const auto& x : a->basis_) {
        const AlgElement ex(x);
        if (a->multiply(one, ex) != ex || a->multiply(ex, one) != ex)
            throw DomainError("'" + unit + "' is not a two-sided unit at " + a->render(x));
        for (const auto& y : a->basis_)
            for (const auto& z : a->basis_) {
                const AlgElement ey(y), ez(z);
                if (a->multiply(a->multiply(ex, ey), ez) != a->multiply(ex, a->multiply(ey, ez)))
                    throw DomainError("structure table is not associative at (" + a->render(x) + ", " + a->render(y) +
                                      ", " + a->render(z) + ")");
            }
    }
    return a;
}

void Algebra::index_basis()
{
    std::stable_sort(basis_.begin(), basis_.end(), [](const Monomial& x, const Monomial& y) {
        if (x.degree() != y.degree())
            return x.degree() < y.degree();
        return y < x;
    });
    index_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i)
        index_.emplace(basis_[i], i);
}

bool Algebra::killed(const Monomial& m) const
{
    return std::any_of(ideal_.begin(), ideal_.end(), [&](const Monomial& g) { return m.divisible_by(g); });
}

std::vector<Monomial> Algebra::basis_up_to(int degree) const
{
    std::vector<Monomial> out;
    for (const auto& m : basis_)
        if (this->degree(m) <= degree)
            out.push_back(m);
    return out;
}

bool Algebra::in_basis(const Monomial& m) const { return index_.contains(m); }

int Algebra::degree(const Monomial& m) const { return m.degree(); }

AlgElement Algebra::one() const { return AlgElement(Scalar(1)); }

AlgElement Algebra::variable(const std::string& name) const { return parse(name); }

AlgElement Algebra::parse(const std::string& text) const
{
    AlgElement out;
    for (auto term : split_sum(text)) {
        const Scalar sign = parse_sign(term);
        if (variables_) {
            out += sign * parse_monomial_term(term, names_);
            continue;
        }
        // table kind: [coefficient*]name
        Scalar c = sign;
        std::string name = term;
        if (auto star = term.rfind('*'); star != std::string::npos) {
            c *= parse_scalar(term.substr(0, star));
            name = term.substr(star + 1);
        }
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        if (!name.empty() && (std::isdigit(static_cast<unsigned char>(name[0])))) {
            out += AlgElement(c * parse_scalar(name));
            continue;
        }
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end())
            throw DomainError("unknown basis element '" + name + "'");
        const int i = static_cast<int>(it - names_.begin());
        out += AlgElement(i == unit_index_ ? Monomial() : Monomial::variable(i), c);
    }
    for (const auto& [m, c] : out.terms())
        if (variables_ ? killed(m) : !in_basis(m))
            throw DomainError("'" + text + "' leaves the basis of A");
    require_in_range(out);
    return out;
}

std::string Algebra::render(const AlgElement& x) const { return x.to_string(names_); }

std::string Algebra::render(const Monomial& m) const { return m.to_string(names_); }

void Algebra::require_in_range(const AlgElement& x) const
{
    if (kind_ != AlgebraKind::PolynomialTruncated)
        return;
    if (x.degree() > cutoff_)
        throw CutoffOverflow("degree " + std::to_string(x.degree()) + " exceeds the cutoff " + std::to_string(cutoff_) +
                             " of A");
}

AlgElement Algebra::normalize(const AlgElement& x) const
{
    if (!ideal_.empty()) {
        AlgElement r;
        for (const auto& [m, c] : x.terms())
            if (!killed(m))
                r.add_term(m, c);
        return r;
    }
    require_in_range(x);
    return x;
}

AlgElement Algebra::multiply_unbounded(const AlgElement& x, const AlgElement& y) const
{
    if (variables_) {
        AlgElement r = x * y;
        if (!ideal_.empty())
            return normalize(r);
        return r;
    }
    auto slot = [&](const Monomial& m) { return static_cast<std::size_t>(m.is_one() ? unit_index_ : m.powers()[0].first); };
    AlgElement r;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms())
            r += (cx * cy) * table_.at(slot(mx)).at(slot(my));
    return r;
}

AlgElement Algebra::multiply(const AlgElement& x, const AlgElement& y) const
{
    AlgElement r = multiply_unbounded(x, y);
    require_in_range(r);
    return r;
}

Polynomial apply_differential(const std::vector<LinearOperator::Term>& terms, const Polynomial& f)
{
    Polynomial out;
    for (const auto& t : terms) {
        Polynomial g = f;
        for (auto [v, e] : t.derivative.powers())
            for (int k = 0; k < e && !g.is_zero(); ++k)
                g = g.derivative(v);
        if (!g.is_zero())
            out += t.coefficient * g;
    }
    return out;
}

LinearOperator LinearOperator::differential(AlgebraPtr a, std::vector<Term> terms)
{
    if (!a->has_variables())
        throw DomainError("differential operators need an algebra with variables");
    LinearOperator op(std::move(a));
    for (auto& t : terms)
        if (!t.coefficient.is_zero())
            op.terms_.push_back(std::move(t));
    const Algebra& A = *op.a_;
    if (!A.ideal().empty()) {
        // must descend to the quotient: first order, no constant part, D(I) ⊂ I
        for (const auto& t : op.terms_)
            if (t.derivative.degree() != 1)
                throw DomainError("on a monomial quotient only derivations Σ c_i ∂_i are supported");
        for (const auto& g : A.ideal()) {
            const Polynomial img = apply_differential(op.terms_, Polynomial(g));
            if (!A.normalize(img).is_zero())
                throw DomainError("operator does not preserve the ideal: D(" + A.render(g) + ") = " + A.render(img));
        }
    }
    return op;
}

LinearOperator LinearOperator::matrix(AlgebraPtr a, std::map<Monomial, AlgElement> images)
{
    for (const auto& [m, img] : images) {
        if (!a->in_basis(m))
            throw DomainError("matrix column for a non-basis element " + a->render(m));
        for (const auto& [k, c] : img.terms())
            if (!a->in_basis(k))
                throw DomainError("matrix entry outside the basis of A");
    }
    LinearOperator op(std::move(a));
    op.matrix_ = std::move(images);
    return op;
}

LinearOperator LinearOperator::identity(AlgebraPtr a)
{
    if (a->has_variables())
        return differential(a, {{Polynomial(1), Monomial()}});
    std::map<Monomial, AlgElement> im;
    for (const auto& m : a->basis())
        im.emplace(m, AlgElement(m));
    return matrix(a, std::move(im));
}

LinearOperator LinearOperator::parse(AlgebraPtr a, const std::string& text)
{
    if (!a->has_variables())
        throw DomainError("operator text needs an algebra with variables; give a matrix instead");
    const auto& names = a->names();
    std::vector<Term> terms;
    for (auto term : split_sum(text)) {
        Scalar sign = parse_sign(term);
        std::vector<std::pair<int, int>> deriv;
        std::string coeff_text;
        std::size_t pos = 0;
        while (pos <= term.size()) {
            auto star = term.find('*', pos);
            std::string factor = term.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
            factor.erase(0, factor.find_first_not_of(' '));
            factor.erase(factor.find_last_not_of(' ') + 1);
            if (factor.rfind("d_", 0) == 0) {
                std::string name = factor.substr(2);
                int e = 1;
                if (auto caret = name.find('^'); caret != std::string::npos) {
                    e = std::stoi(name.substr(caret + 1));
                    name = name.substr(0, caret);
                }
                auto it = std::find(names.begin(), names.end(), name);
                if (it == names.end())
                    throw DomainError("unknown variable in '" + factor + "'");
                deriv.emplace_back(static_cast<int>(it - names.begin()), e);
            } else {
                coeff_text += (coeff_text.empty() ? "" : "*") + factor;
            }
            if (star == std::string::npos)
                break;
            pos = star + 1;
        }
        std::sort(deriv.begin(), deriv.end());
        for (std::size_t i = 1; i < deriv.size(); ++i)
            if (deriv[i].first == deriv[i - 1].first)
                throw DomainError("repeated derivative in '" + term + "'; write d_x^k");
        Polynomial c = coeff_text.empty() ? Polynomial(1) : parse_monomial_term(coeff_text, names);
        terms.push_back({sign * c, Monomial(deriv)});
    }
    // merge equal derivative parts
    std::map<Monomial, Polynomial> merged;
    for (auto& t : terms)
        merged[t.derivative] += t.coefficient;
    std::vector<Term> out;
    for (auto& [d, c] : merged)
        out.push_back({c, d});
    return differential(std::move(a), std::move(out));
}

int LinearOperator::order() const
{
    if (matrix_)
        return -1;
    int o = 0;
    for (const auto& t : terms_)
        o = std::max(o, t.derivative.degree());
    return o;
}

AlgElement LinearOperator::apply_unbounded(const AlgElement& x) const
{
    const Algebra& A = *a_;
    if (!matrix_) {
        Polynomial r = apply_differential(terms_, x);
        return A.ideal().empty() ? r : A.normalize(r);
    }
    AlgElement r;
    for (const auto& [m, c] : x.terms()) {
        auto it = matrix_->find(m);
        if (it != matrix_->end())
            r += c * it->second;
    }
    return r;
}

AlgElement LinearOperator::apply(const AlgElement& x) const
{
    AlgElement r = apply_unbounded(x);
    a_->require_in_range(r);
    return r;
}

std::string LinearOperator::to_string() const
{
    const Algebra& A = *a_;
    if (matrix_) {
        std::string s;
        for (const auto& [m, img] : *matrix_) {
            if (img.is_zero())
                continue;
            if (!s.empty())
                s += ", ";
            s += A.render(m) + " -> " + A.render(img);
        }
        return s.empty() ? "0" : "{" + s + "}";
    }
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& t : terms_) {
        std::string d;
        for (auto [v, e] : t.derivative.powers())
            d += std::string(d.empty() ? "" : "*") + "d_" + A.names()[static_cast<std::size_t>(v)] +
                 (e > 1 ? "^" + std::to_string(e) : "");
        std::string c = A.render(t.coefficient);
        std::string part;
        if (d.empty())
            part = c;
        else if (c == "1")
            part = d;
        else if (c == "-1")
            part = "-" + d;
        else if (t.coefficient.terms().size() > 1)
            part = "(" + c + ")*" + d;
        else
            part = c + "*" + d;
        if (!s.empty())
            s += part[0] == '-' ? " - " + part.substr(1) : " + " + part;
        else
            s = part;
    }
    return s;
}

} // namespace udf
