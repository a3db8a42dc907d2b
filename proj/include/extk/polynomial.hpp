#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "extk/common.hpp"
#include "extk/partitions.hpp"

namespace extk {

/*
 * Sparse multivariate polynomial with arbitrary-precision integer
 * coefficients. Used for exact moment formulas: variables are symbolic
 * dimensions such as "d", "s" or "dA", "dB". Terms are kept in descending
 * lexicographic order of their exponent tuples, which also fixes the JSON
 * serialization order.
 */
class MomentPolynomial {
public:
    using ExpVec = std::vector<int>;
    using TermMap = std::map<ExpVec, BigInt, std::greater<ExpVec>>;

    explicit MomentPolynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {
        if (vars_.empty()) throw validation_error("MomentPolynomial: need at least one variable");
    }

    const std::vector<std::string>& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(ExpVec exps, BigInt coeff) {
        if (exps.size() != vars_.size())
            throw validation_error("MomentPolynomial: exponent arity mismatch");
        for (int e : exps)
            if (e < 0) throw validation_error("MomentPolynomial: negative exponent");
        if (coeff == 0) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(std::move(exps), std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BigInt coeff_of(const ExpVec& exps) const {
        const auto it = terms_.find(exps);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    BigInt evaluate(const std::vector<BigInt>& values) const {
        if (values.size() != vars_.size())
            throw validation_error("MomentPolynomial: evaluation arity mismatch");
        BigInt out = 0;
        for (const auto& [exps, coeff] : terms_) {
            BigInt term = coeff;
            for (size_t v = 0; v < exps.size(); ++v)
                for (int e = 0; e < exps[v]; ++e) term *= values[v];
            out += term;
        }
        return out;
    }

    double evaluate_double(const std::vector<double>& values) const {
        if (values.size() != vars_.size())
            throw validation_error("MomentPolynomial: evaluation arity mismatch");
        double out = 0;
        for (const auto& [exps, coeff] : terms_) {
            double term = static_cast<double>(coeff);
            for (size_t v = 0; v < exps.size(); ++v)
                for (int e = 0; e < exps[v]; ++e) term *= values[v];
            out += term;
        }
        return out;
    }

    // Substitute vars_[src] := scale · vars_[dst]^power and drop the src
    // variable. Covers "evaluate at n = s" (scale 1, power 1) and the
    // asymptotic regime "s = c·d²" (scale c, power 2).
    MomentPolynomial merge_variable(size_t src, size_t dst, const BigInt& scale,
                                    int power) const {
        if (src >= vars_.size() || dst >= vars_.size() || src == dst)
            throw validation_error("MomentPolynomial: bad merge indices");
        if (power < 0) throw validation_error("MomentPolynomial: negative merge power");
        std::vector<std::string> new_vars;
        for (size_t v = 0; v < vars_.size(); ++v)
            if (v != src) new_vars.push_back(vars_[v]);
        MomentPolynomial out(std::move(new_vars));
        for (const auto& [exps, coeff] : terms_) {
            BigInt c = coeff;
            for (int e = 0; e < exps[src]; ++e) c *= scale;
            ExpVec new_exps;
            new_exps.reserve(exps.size() - 1);
            for (size_t v = 0; v < exps.size(); ++v) {
                if (v == src) continue;
                int e = exps[v];
                if (v == dst) e += power * exps[src];
                new_exps.push_back(e);
            }
            out.add_term(std::move(new_exps), std::move(c));
        }
        return out;
    }

    // Degree in a single variable (max exponent over terms); -1 for the zero
    // polynomial.
    int degree_in(size_t v) const {
        if (v >= vars_.size()) throw validation_error("MomentPolynomial: bad variable index");
        int deg = -1;
        for (const auto& [exps, coeff] : terms_) deg = std::max(deg, exps[v]);
        return deg;
    }

    MomentPolynomial operator+(const MomentPolynomial& other) const {
        require_same_vars(other);
        MomentPolynomial out = *this;
        for (const auto& [exps, coeff] : other.terms_) out.add_term(exps, coeff);
        return out;
    }

    MomentPolynomial operator-(const MomentPolynomial& other) const {
        require_same_vars(other);
        MomentPolynomial out = *this;
        for (const auto& [exps, coeff] : other.terms_) out.add_term(exps, -coeff);
        return out;
    }

    MomentPolynomial operator*(const MomentPolynomial& other) const {
        require_same_vars(other);
        MomentPolynomial out(vars_);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : other.terms_) {
                ExpVec e(e1.size());
                for (size_t v = 0; v < e.size(); ++v) e[v] = e1[v] + e2[v];
                out.add_term(std::move(e), c1 * c2);
            }
        }
        return out;
    }

    bool operator==(const MomentPolynomial& other) const {
        return vars_ == other.vars_ && terms_ == other.terms_;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["vars"] = vars_;
        j["terms"] = nlohmann::ordered_json::array();
        for (const auto& [exps, coeff] : terms_) {
            nlohmann::ordered_json t;
            t["exps"] = exps;
            t["coeff"] = coeff.str();
            j["terms"].push_back(std::move(t));
        }
        return j;
    }

    static MomentPolynomial from_json(const nlohmann::json& j) {
        MomentPolynomial out(j.at("vars").get<std::vector<std::string>>());
        for (const auto& t : j.at("terms"))
            out.add_term(t.at("exps").get<ExpVec>(), BigInt(t.at("coeff").get<std::string>()));
        return out;
    }

private:
    void require_same_vars(const MomentPolynomial& other) const {
        if (vars_ != other.vars_)
            throw validation_error("MomentPolynomial: variable lists differ");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

} // namespace extk
