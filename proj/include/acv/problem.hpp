#ifndef ACV_PROBLEM_HPP
#define ACV_PROBLEM_HPP

#include "sparsepoly.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace acv {

struct GridConfig {
    double t_min = 1e-7;
    double t_max = 1e-1;
    int points = 25;
    int fit_points = 12; // least-squares window at the small-t end
};

// Parsed problem file: exact rational coefficients only, no constant term.
struct ProblemSpec {
    size_t n = 0;
    SparsePoly f;
    std::optional<IntMat> user_w;
    std::optional<std::vector<Cplx>> u_star_override;
    bool nondegenerate_at_infinity = false;
    uint64_t seed = 1;
    GridConfig grid;
};

namespace detail {

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline Rat parse_rational(const std::string& tok, int line_no) {
    // accepted: integer "p" or exact fraction "p/q"; floats are rejected
    if (tok.find('.') != std::string::npos || tok.find('e') != std::string::npos ||
        tok.find('E') != std::string::npos)
        throw ParseError("line " + std::to_string(line_no) +
                         ": floating-point coefficient '" + tok + "' (use p/q)");
    try {
        std::string t = tok;
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        size_t slash = t.find('/');
        if (slash == std::string::npos) return Rat(BigInt(t));
        BigInt num(t.substr(0, slash));
        BigInt den(t.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad rational '" +
                         tok + "'");
    }
}

} // namespace detail

/// Problem file format: comment lines start with '#';
///   n = <dim>
///   nondegenerate = true|false        (optional)
///   seed = <integer>                  (optional)
///   term <coeff> <e_1> ... <e_n>      (one per monomial, coeff exact rational)
inline ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_n = false;
    std::vector<std::pair<Rat, Expo>> terms;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = detail::strip(line);
        if (s.empty() || s[0] == '#') continue;
        std::istringstream ls(s);
        std::string key;
        ls >> key;
        if (key == "n") {
            std::string eq;
            ls >> eq;
            long nv = -1;
            ls >> nv;
            if (eq != "=" || nv < 1)
                throw ParseError("line " + std::to_string(line_no) + ": bad 'n ='");
            spec.n = static_cast<size_t>(nv);
            have_n = true;
        } else if (key == "nondegenerate") {
            std::string eq, v;
            ls >> eq >> v;
            spec.nondegenerate_at_infinity = (v == "true" || v == "1");
        } else if (key == "seed") {
            std::string eq;
            uint64_t v = 0;
            ls >> eq >> v;
            spec.seed = v;
        } else if (key == "term") {
            if (!have_n)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": term before 'n ='");
            std::string ctok;
            ls >> ctok;
            Rat c = detail::parse_rational(ctok, line_no);
            Expo e(spec.n);
            for (size_t i = 0; i < spec.n; ++i) {
                long v;
                if (!(ls >> v))
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(spec.n) +
                                     " exponents");
                if (v < 0)
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": negative exponent");
                e[i] = v;
            }
            terms.emplace_back(c, e);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" +
                             key + "'");
        }
    }
    if (!have_n) throw ParseError("missing 'n ='");
    if (terms.empty()) throw ParseError("no terms");
    spec.f = SparsePoly(spec.n);
    for (auto& [c, e] : terms) spec.f.add_term(e, c);
    Expo zero(spec.n, 0);
    if (spec.f.terms.count(zero))
        throw ConstantTermPresent("f(0) != 0");
    if (spec.f.is_zero()) throw ParseError("zero polynomial");
    return spec;
}

inline ProblemSpec parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

/// Canonical serialization of the problem (round-trip form).
inline std::string serialize_problem(const ProblemSpec& spec) {
    std::ostringstream out;
    out << "n = " << spec.n << "\n";
    if (spec.nondegenerate_at_infinity) out << "nondegenerate = true\n";
    for (const auto& [e, c] : spec.f.terms) {
        out << "term " << numerator(c).str();
        if (denominator(c) != 1) out << "/" << denominator(c).str();
        for (long v : e) out << " " << v;
        out << "\n";
    }
    return out.str();
}

/// W-file: n rows of n integers.
inline IntMat parse_chart_file(const std::string& path, size_t n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open chart file '" + path + "'");
    IntMat w(n, IntVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            long v;
            if (!(in >> v)) throw ParseError("chart file: expected n*n integers");
            w[i][j] = v;
        }
    return w;
}

/// u* override: comma-separated entries, each a rational "p/q", an integer,
/// or "a+bi" with rational a, b.
inline std::vector<Cplx> parse_ustar(const std::string& text, size_t n) {
    std::vector<Cplx> out;
    std::stringstream ss(text);
    std::string tok;
    int idx = 0;
    while (std::getline(ss, tok, ',')) {
        ++idx;
        tok = detail::strip(tok);
        double re = 0, im = 0;
        size_t ipos = tok.find('i');
        if (ipos != std::string::npos) {
            size_t sep = tok.find_last_of("+-", ipos - 1);
            if (sep == std::string::npos || sep == 0)
                throw ParseError("ustar: bad complex entry '" + tok + "'");
            re = to_double(detail::parse_rational(tok.substr(0, sep), idx));
            std::string imtok = tok.substr(sep, ipos - sep);
            if (imtok == "+") imtok = "1";
            if (imtok == "-") imtok = "-1";
            im = to_double(detail::parse_rational(imtok, idx));
        } else {
            re = to_double(detail::parse_rational(tok, idx));
        }
        out.emplace_back(re, im);
    }
    if (out.size() != n)
        throw ParseError("ustar: expected " + std::to_string(n) + " entries");
    return out;
}

} // namespace acv

#endif
