#include "udf/bialgebra/tensor.hpp"

#include "udf/error.hpp"
#include "udf/kernel/polynomial.hpp"

#include <cctype>
#include <numeric>

namespace udf {

Scalar TensorElement::coefficient(const TensorKey& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void TensorElement::add_term(const TensorKey& key, const Scalar& c)
{
    if (key.size() != arity_)
        throw DomainError("tensor key of length " + std::to_string(key.size()) + " in an arity-" +
                          std::to_string(arity_) + " element");
    if (udf::is_zero(c))
        return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

void TensorElement::require_compatible(const TensorElement& other) const
{
    if (parent_ != other.parent_)
        throw DomainError("tensor elements over different bialgebras");
    if (arity_ != other.arity_)
        throw DomainError("arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(other.arity_));
}

TensorElement& TensorElement::operator+=(const TensorElement& other)
{
    require_compatible(other);
    for (const auto& [k, c] : other.terms_)
        add_term(k, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other)
{
    require_compatible(other);
    for (const auto& [k, c] : other.terms_)
        add_term(k, -c);
    return *this;
}

TensorElement& TensorElement::operator*=(const Scalar& s)
{
    if (udf::is_zero(s)) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_)
        c *= s;
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) { return tensor_multiply(a, b); }

bool TensorElement::operator==(const TensorElement& other) const
{
    return parent_ == other.parent_ && arity_ == other.arity_ && terms_ == other.terms_;
}

std::string TensorElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        Scalar mag = abs(c);
        if (first)
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        first = false;
        std::string body;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i)
                body += "⊗";
            body += parent_->render(key[i]);
        }
        if (key.empty())
            out += udf::to_string(mag);
        else if (mag == 1)
            out += body;
        else
            out += udf::to_string(mag) + " " + body;
    }
    return out;
}

namespace {

std::string strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_slots(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t len = 0;
        if (s.compare(i, 3, "⊗") == 0)
            len = 3;
        else if (s.compare(i, 3, "(x)") == 0)
            len = 3;
        if (len) {
            out.push_back(strip(std::string_view(s).substr(start, i - start)));
            i += len;
            start = i;
        } else {
            ++i;
        }
    }
    out.push_back(strip(std::string_view(s).substr(start)));
    return out;
}

bool numeric_token(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/')
            return false;
    return true;
}

} // namespace

TensorElement parse_tensor(const BialgebraPtr& b, std::size_t arity, const std::string& text)
{
    TensorElement out(b, arity);
    for (auto term : split_sum(text)) {
        Scalar coeff = 1;
        if (term[0] == '-' || term[0] == '+') {
            if (term[0] == '-')
                coeff = -1;
            term = strip(std::string_view(term).substr(1));
        }
        // "1/2 p1⊗p2": a leading scalar separated by a space
        if (auto sp = term.find(' '); sp != std::string::npos && numeric_token(term.substr(0, sp))) {
            coeff *= parse_scalar(term.substr(0, sp));
            term = strip(std::string_view(term).substr(sp + 1));
        }
        auto slots = split_slots(term);
        if (slots.size() == 1 && numeric_token(slots[0])) {
            coeff *= parse_scalar(slots[0]);
            out += coeff * b->unit_tensor(arity);
            continue;
        }
        if (slots.size() != arity)
            throw DomainError("term '" + term + "' has " + std::to_string(slots.size()) + " slots, expected " +
                              std::to_string(arity));
        TensorKey key;
        for (const auto& slot : slots) {
            auto [k, c] = b->parse_key(slot);
            key.push_back(k);
            coeff *= c;
        }
        out.add_term(key, coeff);
    }
    return out;
}

Scalar TensorElement::scalar_value() const
{
    if (arity_ != 0)
        throw DomainError("scalar_value needs an arity-0 element");
    return coefficient({});
}

TensorElement tensor_multiply(const TensorElement& u, const TensorElement& v)
{
    u.require_compatible(v);
    const Bialgebra& b = u.bialgebra();
    TensorElement r(u.parent(), u.arity());
    TensorKey key(u.arity());
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            for (std::size_t i = 0; i < key.size(); ++i)
                key[i] = b.multiply(ku[i], kv[i]);
            r.add_term(key, cu * cv);
        }
    return r;
}

TensorElement otimes(const TensorElement& u, const TensorElement& v)
{
    if (u.parent() != v.parent())
        throw DomainError("tensor elements over different bialgebras");
    TensorElement r(u.parent(), u.arity() + v.arity());
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            TensorKey key = ku;
            key.insert(key.end(), kv.begin(), kv.end());
            r.add_term(key, cu * cv);
        }
    return r;
}

TensorElement otimes(std::span<const TensorElement> factors)
{
    if (factors.empty())
        throw DomainError("otimes of an empty family");
    TensorElement r = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i)
        r = otimes(r, factors[i]);
    return r;
}

namespace {

void check_slot(std::size_t slot, const TensorElement& u)
{
    if (slot < 1 || slot > u.arity())
        throw DomainError("slot " + std::to_string(slot) + " out of range for arity " + std::to_string(u.arity()));
}

// Δ^k of a basis key as (tuple, coefficient) pairs.
std::vector<std::pair<TensorKey, Scalar>> iterated_on_key(const CoalgebraView& b, const BasisKey& key, int k)
{
    if (k == -1)
        return {{TensorKey{}, b.counit(key)}};
    std::vector<std::pair<TensorKey, Scalar>> cur{{TensorKey{key}, Scalar(1)}};
    for (int step = 0; step < k; ++step) {
        std::map<TensorKey, Scalar> acc;
        for (const auto& [tk, c] : cur)
            for (const auto& e : b.coproduct(tk[0])) {
                TensorKey nk;
                nk.reserve(tk.size() + 1);
                nk.push_back(e.left);
                nk.push_back(e.right);
                nk.insert(nk.end(), tk.begin() + 1, tk.end());
                acc[nk] += c * e.coeff;
            }
        cur.clear();
        for (auto& [tk, c] : acc)
            if (!is_zero(c))
                cur.emplace_back(tk, c);
    }
    return cur;
}

} // namespace

TensorElement slot_iterated_coproduct(const TensorElement& u, std::size_t slot, int k)
{
    return slot_iterated_coproduct(u.bialgebra().coalgebra(), u, slot, k);
}

TensorElement slot_iterated_coproduct(const CoalgebraView& b, const TensorElement& u, std::size_t slot, int k)
{
    check_slot(slot, u);
    if (k < -1)
        throw DomainError("iterated coproduct order must be >= -1");
    TensorElement r(u.parent(), u.arity() + static_cast<std::size_t>(k));
    std::map<BasisKey, std::vector<std::pair<TensorKey, Scalar>>> cache;
    for (const auto& [key, c] : u.terms()) {
        const BasisKey& x = key[slot - 1];
        auto it = cache.find(x);
        if (it == cache.end())
            it = cache.emplace(x, iterated_on_key(b, x, k)).first;
        for (const auto& [piece, pc] : it->second) {
            TensorKey nk(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(slot - 1));
            nk.insert(nk.end(), piece.begin(), piece.end());
            nk.insert(nk.end(), key.begin() + static_cast<std::ptrdiff_t>(slot), key.end());
            r.add_term(nk, c * pc);
        }
    }
    return r;
}

TensorElement slot_apply(SlotMap map, std::size_t slot, const TensorElement& u)
{
    switch (map) {
    case SlotMap::Identity:
        check_slot(slot, u);
        return u;
    case SlotMap::Coproduct:
        return slot_iterated_coproduct(u, slot, 1);
    case SlotMap::Counit:
        return slot_iterated_coproduct(u, slot, -1);
    }
    return u;
}

TensorElement iterated_coproduct(const TensorElement& b, int k)
{
    if (b.arity() != 1)
        throw DomainError("iterated_coproduct needs an element of B (arity 1)");
    return slot_iterated_coproduct(b, 1, k);
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image))
{
    std::vector<bool> hit(image_.size(), false);
    for (int x : image_) {
        if (x < 1 || x > static_cast<int>(image_.size()) || hit[static_cast<std::size_t>(x - 1)])
            throw DomainError("not a permutation");
        hit[static_cast<std::size_t>(x - 1)] = true;
    }
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
}

Permutation Permutation::transposition(std::size_t n, int i, int j)
{
    Permutation p = identity(n);
    std::swap(p.image_.at(static_cast<std::size_t>(i - 1)), p.image_.at(static_cast<std::size_t>(j - 1)));
    return p;
}

Permutation Permutation::inverse() const
{
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        inv[static_cast<std::size_t>(image_[i] - 1)] = static_cast<int>(i + 1);
    return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& s, const Permutation& t)
{
    if (s.size() != t.size())
        throw DomainError("composing permutations of different sizes");
    std::vector<int> im(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        im[i] = t(s.image_[i]);
    return Permutation(std::move(im));
}

TensorElement permute_factors(const Permutation& sigma, const TensorElement& u)
{
    if (sigma.size() != u.arity())
        throw DomainError("permutation size " + std::to_string(sigma.size()) + " does not match arity " +
                          std::to_string(u.arity()));
    TensorElement r(u.parent(), u.arity());
    TensorKey nk(u.arity());
    for (const auto& [key, c] : u.terms()) {
        for (std::size_t i = 0; i < key.size(); ++i)
            nk[i] = key[static_cast<std::size_t>(sigma(static_cast<int>(i + 1)) - 1)];
        r.add_term(nk, c);
    }
    return r;
}

TensorElement flip(const TensorElement& u)
{
    if (u.arity() != 2)
        throw DomainError("flip needs arity 2");
    return permute_factors(Permutation({2, 1}), u);
}

TensorSeries constant_series(unsigned order, const TensorElement& value)
{
    return TensorSeries::constant(order, value, value.bialgebra().zero(value.arity()));
}

TensorSeries slot_apply(SlotMap map, std::size_t slot, const TensorSeries& u)
{
    return u.map([&](const TensorElement& c) { return slot_apply(map, slot, c); });
}

TensorSeries otimes(const TensorSeries& u, const TensorSeries& v)
{
    if (u.order() != v.order())
        throw DomainError("truncation orders differ");
    const unsigned n = u.order();
    TensorSeries r(n, u[0].bialgebra().zero(u[0].arity() + v[0].arity()));
    for (unsigned i = 0; i <= n; ++i) {
        if (u[i].is_zero())
            continue;
        for (unsigned j = 0; i + j <= n; ++j)
            if (!v[j].is_zero())
                r[i + j] += otimes(u[i], v[j]);
    }
    return r;
}

TensorSeries permute_factors(const Permutation& sigma, const TensorSeries& u)
{
    return u.map([&](const TensorElement& c) { return permute_factors(sigma, c); });
}

std::string to_string(const TensorSeries& s)
{
    std::string out;
    for (unsigned k = 0; k <= s.order(); ++k) {
        if (s[k].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        const std::string body = s[k].to_string();
        if (k == 0)
            out += "(" + body + ")";
        else
            out += (k == 1 ? std::string("t") : "t^" + std::to_string(k)) + "*(" + body + ")";
    }
    return out.empty() ? "0" : out;
}

} // namespace udf

namespace udf {

std::vector<TensorKey> pure_tensor_keys(const Bialgebra& b, std::size_t arity, int max_degree)
{
    std::vector<TensorKey> out;
    if (max_degree < 0)
        return out;
    std::vector<std::vector<BasisKey>> by_degree;
    for (int g = 0; g <= max_degree; ++g)
        by_degree.push_back(b.basis(g));
    TensorKey cur;
    auto rec = [&](auto&& self, int budget) -> void {
        if (cur.size() == arity) {
            out.push_back(cur);
            return;
        }
        for (int g = 0; g <= budget; ++g)
            for (const auto& k : by_degree[static_cast<std::size_t>(g)]) {
                cur.push_back(k);
                self(self, budget - g);
                cur.pop_back();
            }
    };
    rec(rec, max_degree);
    return out;
}

} // namespace udf
