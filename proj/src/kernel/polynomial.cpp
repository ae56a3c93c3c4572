#include "udf/kernel/polynomial.hpp"

#include "udf/error.hpp"

#include <algorithm>
#include <cctype>

namespace udf {

Monomial::Monomial(std::vector<std::pair<int, int>> powers)
{
    std::sort(powers.begin(), powers.end());
    for (auto [var, e] : powers) {
        if (e < 0)
            throw DomainError("negative exponent in monomial");
        if (e == 0)
            continue;
        if (!powers_.empty() && powers_.back().first == var)
            powers_.back().second += e;
        else
            powers_.emplace_back(var, e);
    }
}

Monomial Monomial::variable(int var, int exponent)
{
    return Monomial({{var, exponent}});
}

int Monomial::exponent(int var) const
{
    for (auto [v, e] : powers_)
        if (v == var)
            return e;
    return 0;
}

int Monomial::degree() const
{
    int d = 0;
    for (auto [v, e] : powers_)
        d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial r;
    auto a = powers_.begin(), b = other.powers_.begin();
    while (a != powers_.end() || b != other.powers_.end()) {
        if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first))
            r.powers_.push_back(*a++);
        else if (a == powers_.end() || b->first < a->first)
            r.powers_.push_back(*b++);
        else {
            r.powers_.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    return r;
}

bool Monomial::divisible_by(const Monomial& other) const
{
    for (auto [v, e] : other.powers_)
        if (exponent(v) < e)
            return false;
    return true;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const
{
    if (auto c = degree() <=> other.degree(); c != 0)
        return c;
    auto a = powers_.begin(), b = other.powers_.begin();
    while (a != powers_.end() && b != other.powers_.end()) {
        if (a->first != b->first)
            // the monomial containing the lower variable id has the larger
            // exponent at that position
            return a->first < b->first ? std::strong_ordering::greater : std::strong_ordering::less;
        if (a->second != b->second)
            return a->second <=> b->second;
        ++a, ++b;
    }
    if (a != powers_.end())
        return std::strong_ordering::greater;
    if (b != other.powers_.end())
        return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::string Monomial::to_string(std::span<const std::string> names) const
{
    if (powers_.empty())
        return "1";
    std::string s;
    for (auto [v, e] : powers_) {
        if (!s.empty())
            s += "*";
        s += (v >= 0 && static_cast<std::size_t>(v) < names.size()) ? names[v] : "x" + std::to_string(v);
        if (e != 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

Polynomial::Polynomial(const Scalar& constant)
{
    if (!udf::is_zero(constant))
        terms_.emplace(Monomial{}, constant);
}

Polynomial::Polynomial(const Monomial& m, const Scalar& c)
{
    if (!udf::is_zero(c))
        terms_.emplace(m, c);
}

Scalar Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

int Polynomial::degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

const Monomial& Polynomial::leading_monomial() const
{
    if (terms_.empty())
        throw DomainError("leading monomial of zero polynomial");
    return terms_.rbegin()->first;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c)
{
    if (udf::is_zero(c))
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (udf::is_zero(it->second))
            terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s)
{
    if (udf::is_zero(s)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::derivative(int var) const
{
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(var);
        if (e == 0)
            continue;
        auto powers = m.powers();
        for (auto& [v, x] : powers)
            if (v == var)
                --x;
        r.add_term(Monomial(std::move(powers)), c * e);
    }
    return r;
}

Polynomial Polynomial::pow(unsigned k) const
{
    Polynomial r(1), base = *this;
    while (k) {
        if (k & 1)
            r = r * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const
{
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        Polynomial term(c);
        std::vector<std::pair<int, int>> kept;
        for (auto [v, e] : m.powers()) {
            if (v >= 0 && static_cast<std::size_t>(v) < images.size())
                term = term * images[v].pow(e);
            else
                kept.emplace_back(v, e);
        }
        r += term * Polynomial(Monomial(std::move(kept)));
    }
    return r;
}

std::string Polynomial::to_string(std::span<const std::string> names) const
{
    if (terms_.empty())
        return "0";
    std::string s;
    // descending graded order reads naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = sgn(c) < 0;
        Scalar a = neg ? Scalar(-c) : c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (m.is_one())
            s += udf::to_string(a);
        else if (a == 1)
            s += m.to_string(names);
        else
            s += udf::to_string(a) + "*" + m.to_string(names);
    }
    return s;
}

Polynomial parse_monomial_term(std::string_view text, std::span<const std::string> names)
{
    Scalar coeff = 1;
    std::vector<std::pair<int, int>> powers;
    std::size_t pos = 0;
    auto trim = [](std::string_view t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
            t.remove_prefix(1);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
            t.remove_suffix(1);
        return t;
    };
    while (pos <= text.size()) {
        auto star = text.find('*', pos);
        auto factor = trim(text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
        if (factor.empty())
            throw DomainError("empty factor in '" + std::string(text) + "'");
        if (std::isdigit(static_cast<unsigned char>(factor.front())) || factor.front() == '-') {
            coeff *= parse_scalar(factor);
        } else {
            auto caret = factor.find('^');
            auto name = trim(factor.substr(0, caret));
            int e = 1;
            if (caret != std::string_view::npos) {
                auto es = trim(factor.substr(caret + 1));
                if (es.empty() || !std::all_of(es.begin(), es.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    throw DomainError("bad exponent in '" + std::string(factor) + "'");
                e = std::stoi(std::string(es));
            }
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end())
                throw DomainError("unknown variable '" + std::string(name) + "'");
            powers.emplace_back(static_cast<int>(it - names.begin()), e);
        }
        if (star == std::string_view::npos)
            break;
        pos = star + 1;
    }
    return Polynomial(Monomial(std::move(powers)), coeff);
}

} // namespace udf

namespace udf {

std::vector<std::string> split_sum(std::string_view text)
{
    auto trim = [](std::string_view t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
            t.remove_prefix(1);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
            t.remove_suffix(1);
        return std::string(t);
    };
    const std::string s = trim(text);
    if (s.empty())
        throw DomainError("empty expression");
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        bool cut = i == s.size();
        if (!cut && (s[i] == '+' || s[i] == '-')) {
            std::size_t j = i;
            while (j > 0 && std::isspace(static_cast<unsigned char>(s[j - 1])))
                --j;
            cut = j > 0 && std::string_view("^*/+-").find(s[j - 1]) == std::string_view::npos;
        }
        if (cut) {
            std::string term = trim(std::string_view(s).substr(start, i - start));
            if (!term.empty() && term.front() == '+')
                term = trim(std::string_view(term).substr(1));
            if (term.empty())
                throw DomainError("empty term in '" + s + "'");
            out.push_back(term);
            start = i;
        }
    }
    return out;
}

} // namespace udf
