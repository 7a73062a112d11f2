#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace lslab {

/// Multivariate polynomial in up to 3 variables as a monomial list.
/// Degree stays small (<= 4 in practice), so exact symbolic partial
/// derivatives are cheap.
struct Polynomial {
    struct Monomial {
        double coeff;
        std::array<int, 3> exp;
    };
    std::vector<Monomial> monomials;

    static Polynomial constant(double c) { return Polynomial{{{c, {0, 0, 0}}}}; }

    /// Parse "coeff e1 e2 e3; coeff e1 e2 e3; ..." rows.
    static Polynomial parse(const std::string& text) {
        Polynomial p;
        std::size_t start = 0;
        while (start < text.size()) {
            std::size_t end = text.find(';', start);
            if (end == std::string::npos) end = text.size();
            const std::string row = text.substr(start, end - start);
            start = end + 1;
            const char* s = row.c_str();
            char* rest = nullptr;
            const double c = std::strtod(s, &rest);
            if (rest == s) {
                bool blank = true;
                for (char ch : row)
                    if (!isspace(static_cast<unsigned char>(ch))) blank = false;
                if (blank) continue;
                throw std::invalid_argument("Polynomial::parse: bad row '" + row + "'");
            }
            std::array<int, 3> e{0, 0, 0};
            for (int d = 0; d < 3; ++d) {
                s = rest;
                e[d] = static_cast<int>(std::strtol(s, &rest, 10));
                if (rest == s) throw std::invalid_argument("Polynomial::parse: bad row '" + row + "'");
            }
            p.monomials.push_back({c, e});
        }
        if (p.monomials.empty()) throw std::invalid_argument("Polynomial::parse: empty polynomial");
        return p;
    }

    double eval(const std::array<double, 3>& x) const {
        double v = 0.0;
        for (const auto& m : monomials) {
            double t = m.coeff;
            for (int d = 0; d < 3; ++d)
                for (int k = 0; k < m.exp[d]; ++k) t *= x[d];
            v += t;
        }
        return v;
    }

    Polynomial derivative(int axis) const {
        Polynomial p;
        for (const auto& m : monomials) {
            if (m.exp[axis] == 0) continue;
            Monomial d = m;
            d.coeff *= m.exp[axis];
            d.exp[axis] -= 1;
            p.monomials.push_back(d);
        }
        if (p.monomials.empty()) p.monomials.push_back({0.0, {0, 0, 0}});
        return p;
    }

    int degree() const {
        int deg = 0;
        for (const auto& m : monomials)
            deg = std::max(deg, m.exp[0] + m.exp[1] + m.exp[2]);
        return deg;
    }
};

} // namespace lslab
