#include "equistat/rational.hpp"

#include "equistat/error.hpp"

#include <cctype>

namespace equistat {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

mpq_class parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view ex = s.substr(e + 1);
        s = s.substr(0, e);
        bool eneg = false;
        if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
            eneg = ex[0] == '-';
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) throw InputError("bad exponent in rational: " + std::string(text));
        exponent = std::stol(std::string(ex));
        if (eneg) exponent = -exponent;
    }
    std::string digits;
    long frac = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw InputError("bad rational: " + std::string(text));
        digits = std::string(ip) + std::string(fp);
        frac = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw InputError("bad rational: " + std::string(text));
        digits = std::string(s);
    }
    mpq_class v{mpz_class(digits, 10)};
    long shift = exponent - frac;
    if (shift > 0) v *= mpq_class(pow10(static_cast<unsigned long>(shift)));
    if (shift < 0) v /= mpq_class(pow10(static_cast<unsigned long>(-shift)));
    v.canonicalize();
    return neg ? mpq_class(-v) : v;
}

}  // namespace

Rat::Rat(long n, long d) {
    if (d == 0) throw InputError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.sign() == 0) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw InputError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
        std::string_view nd = num;
        if (!nd.empty() && (nd[0] == '-' || nd[0] == '+')) nd.remove_prefix(1);
        if (!all_digits(nd) || !all_digits(den)) throw InputError("bad rational: " + std::string(text));
        mpz_class d(std::string(den), 10);
        if (d == 0) throw InputError("zero denominator: " + std::string(text));
        mpz_class n(std::string(nd), 10);
        if (!num.empty() && num[0] == '-') n = -n;
        mpq_class q(n, d);
        q.canonicalize();
        return Rat(q);
    }
    return Rat(parse_decimal(text));
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rat::hash() const {
    std::size_t h = mpz_get_ui(v_.get_num_mpz_t()) * 1000003u;
    h ^= mpz_get_ui(v_.get_den_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(sgn(v_) + 1);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace equistat
