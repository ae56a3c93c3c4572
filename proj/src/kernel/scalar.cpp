#include "udf/kernel/scalar.hpp"

#include "udf/error.hpp"

#include <cctype>

namespace udf {

Scalar parse_scalar(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (!s.empty() && s.front() == '+')
        s.erase(s.begin());
    if (s.empty())
        throw DomainError("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw DomainError("malformed rational literal '" + std::string(text) + "'");
    Integer n(num), d(den);
    if (d == 0)
        throw DomainError("zero denominator in '" + std::string(text) + "'");
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

Scalar factorial(unsigned n)
{
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k)
        f *= k;
    return Scalar(f);
}

} // namespace udf
