#include "expsolve/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

namespace expsolve {

namespace {

bool is_decimal_form(const std::string& s) {
    return s.find_first_of(".eE") != std::string::npos;
}

// One RATIONAL or decimal, as (exact?, mpq, double).
struct NumberPart {
    bool exact = true;
    mpq_class q;
    double d = 0;
};

NumberPart parse_number(const std::string& s) {
    if (s.empty())
        throw parse_error("empty number");
    NumberPart out;
    if (is_decimal_form(s)) {
        out.exact = false;
        char* end = nullptr;
        out.d = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size())
            throw parse_error("malformed decimal '" + s + "'");
        return out;
    }
    size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto check_digits = [](const std::string& part, bool sign_ok) {
        if (part.empty())
            return false;
        size_t start = 0;
        if (sign_ok && part[0] == '-')
            start = 1;
        if (start == part.size())
            return false;
        for (size_t i = start; i < part.size(); ++i)
            if (!std::isdigit((unsigned char)part[i]))
                return false;
        return true;
    };
    if (!check_digits(num, true) || !check_digits(den, false))
        throw parse_error("malformed rational '" + s + "'");
    mpz_class n(num), d(den);
    if (d == 0)
        throw parse_error("zero denominator in '" + s + "'");
    out.q = mpq_class(n, d);
    out.q.canonicalize();
    return out;
}

} // namespace

Scalar parse_scalar(const std::string& text) {
    size_t lo = text.find_first_not_of(" \t\r\n");
    size_t hi = text.find_last_not_of(" \t\r\n");
    std::string s = lo == std::string::npos ? "" : text.substr(lo, hi - lo + 1);
    if (s.empty())
        throw parse_error("empty scalar");

    // split "A+Bi" / "A-Bi" at the last top-level sign that is not an
    // exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if (s[i] != '+' && s[i] != '-')
            continue;
        char prev = s[i - 1];
        if (prev == 'e' || prev == 'E' || prev == '/' )
            continue;
        split = i;
        break;
    }

    std::string re_part, im_part;
    bool has_im = false;
    if (!s.empty() && s.back() == 'i') {
        has_im = true;
        if (split != std::string::npos) {
            re_part = s.substr(0, split);
            im_part = s.substr(split, s.size() - split - 1);
        } else {
            im_part = s.substr(0, s.size() - 1);
        }
        if (im_part == "+" || im_part == "-" || im_part.empty())
            throw parse_error("imaginary part needs digits in '" + text + "'");
        if (im_part[0] == '+')
            im_part = im_part.substr(1);
    } else {
        re_part = s;
    }

    NumberPart re = re_part.empty() ? NumberPart{} : parse_number(re_part);
    NumberPart im = has_im ? parse_number(im_part) : NumberPart{};
    if (re.exact && im.exact)
        return Scalar(GaussianRational{re.q, im.q});
    double rd = re.exact ? re.q.get_d() : re.d;
    double id = im.exact ? im.q.get_d() : im.d;
    return Scalar::approx(rd, id);
}

std::string format_scalar(const Scalar& s) { return s.str(); }

namespace {

json get_field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key))
        throw parse_error(std::string("missing field '") + key + "'");
    return doc.at(key);
}

// Problem documents carry exact scalars only; numeric mode converts after
// parsing. Frequencies must additionally be real rationals.
ExpSum term_list_to_expsum(const json& arr) {
    if (!arr.is_array())
        throw parse_error("term list must be an array");
    std::vector<ExpTerm> terms;
    for (const json& t : arr) {
        Scalar freq = parse_scalar(get_field(t, "freq").get<std::string>());
        if (!freq.is_exact() || !freq.exact_value().is_real())
            throw parse_error("frequency must be a real rational: '" +
                              get_field(t, "freq").get<std::string>() + "'");
        Scalar coef = parse_scalar(get_field(t, "coef").get<std::string>());
        if (!coef.is_exact())
            throw parse_error("problem scalars must be exact; use --mode numeric to "
                              "solve numerically");
        terms.push_back({std::move(freq), Poly::constant(Var::z, std::move(coef))});
    }
    return ExpSum::from_terms(std::move(terms));
}

} // namespace

RawProblem problem_from_json(const json& doc) {
    RawProblem p;
    json order = get_field(doc, "order");
    if (!order.is_number_integer() || order.get<long>() < 1)
        throw parse_error("order must be a positive integer");
    p.order = order.get<int>();
    if (doc.contains("leading"))
        p.leading = term_list_to_expsum(doc.at("leading"));
    json coeffs = get_field(doc, "coefficients");
    if (!coeffs.is_array() || int(coeffs.size()) != p.order)
        throw parse_error("coefficients must list exactly order entries (A_0..A_{order-1})");
    for (const json& c : coeffs)
        p.coeffs.push_back(term_list_to_expsum(c));
    validate(p);
    return p;
}

RawProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw parse_error("invalid JSON in '" + path + "': " + e.what());
    }
    return problem_from_json(doc);
}

json expsum_to_json(const ExpSum& s) {
    json arr = json::array();
    for (const ExpTerm& t : s.terms()) {
        json zpoly = json::array();
        for (int k = 0; k <= std::max(t.coeff.degree(), 0); ++k)
            zpoly.push_back(format_scalar(t.coeff.coeff(k)));
        arr.push_back({{"freq", format_scalar(t.freq)}, {"zpoly", zpoly}});
    }
    return arr;
}

ExpSum expsum_from_json(const json& doc) {
    if (!doc.is_array())
        throw parse_error("solution term list must be an array");
    std::vector<ExpTerm> terms;
    for (const json& t : doc) {
        Scalar freq = parse_scalar(get_field(t, "freq").get<std::string>());
        json zp = get_field(t, "zpoly");
        if (!zp.is_array())
            throw parse_error("zpoly must be an array of scalars");
        std::vector<Scalar> coeffs;
        for (const json& c : zp)
            coeffs.push_back(parse_scalar(c.get<std::string>()));
        terms.push_back({std::move(freq), Poly::from_coeffs(Var::z, std::move(coeffs))});
    }
    return ExpSum::from_terms(std::move(terms));
}

SolutionDocument solution_from_json(const json& doc) {
    SolutionDocument out;
    json basis = get_field(doc, "basis");
    if (!basis.is_array())
        throw parse_error("basis must be an array");
    for (const json& b : basis)
        out.basis.push_back(expsum_from_json(get_field(b, "terms")));
    if (doc.contains("metadata"))
        out.metadata = doc.at("metadata");
    return out;
}

SolutionDocument load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw parse_error("invalid JSON in '" + path + "': " + e.what());
    }
    return solution_from_json(doc);
}

json root_set_to_json(const RootSet& rs, const std::vector<RootClass>& classes) {
    auto class_of = [&](const Scalar& v) -> int {
        for (size_t c = 0; c < classes.size(); ++c)
            for (size_t m = 0; m < classes[c].offsets.size(); ++m) {
                Scalar member = classes[c].base;
                Scalar off = Scalar(long(classes[c].offsets[m])).in_mode(member.mode());
                if (member + off == v ||
                    (!v.is_exact() &&
                     std::abs((member + off).to_complex() - v.to_complex()) < 1e-12))
                    return int(c);
            }
        return -1;
    };
    json roots = json::array();
    for (const Root& r : rs.roots)
        roots.push_back({{"value", format_scalar(r.value)},
                         {"multiplicity", r.multiplicity},
                         {"exactness", r.exact ? "exact" : "approx"},
                         {"class", class_of(r.value)}});
    json cls = json::array();
    for (const RootClass& c : classes) {
        json offsets = json::array(), mults = json::array(), warnings = json::array();
        for (int o : c.offsets)
            offsets.push_back(o);
        for (int m : c.multiplicities)
            mults.push_back(m);
        for (const std::string& w : c.warnings)
            warnings.push_back(w);
        cls.push_back({{"base", format_scalar(c.base)},
                       {"offsets", offsets},
                       {"multiplicities", mults},
                       {"all_exact", c.all_exact},
                       {"warnings", warnings}});
    }
    return {{"roots", roots}, {"classes", cls}};
}

} // namespace expsolve
