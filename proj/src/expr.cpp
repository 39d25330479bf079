#include "lbmfd/expr.hpp"

#include <cctype>
#include <sstream>

#include "lbmfd/error.hpp"

namespace lbmfd {

// ---------------------------------------------------------------------------
// MomentPoly

void MomentPoly::add_term(Exps e, const Coeff& c) {
    if (c.is_zero()) return;
    while (!e.empty() && e.back() == 0) e.pop_back();
    auto [it, inserted] = terms_.emplace(std::move(e), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Coeff MomentPoly::coeff_value() const {
    if (terms_.empty()) return Coeff();
    if (!is_coeff()) raise(ErrorKind::Internal, "expression contains moment symbols: " + str());
    return terms_.begin()->second;
}

int MomentPoly::max_moment() const {
    int mx = -1;
    for (const auto& [e, c] : terms_) mx = std::max(mx, static_cast<int>(e.size()) - 1);
    return mx;
}

int MomentPoly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

MomentPoly MomentPoly::operator-() const {
    MomentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MomentPoly MomentPoly::operator+(const MomentPoly& o) const {
    MomentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MomentPoly MomentPoly::operator-(const MomentPoly& o) const {
    MomentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MomentPoly MomentPoly::operator*(const MomentPoly& o) const {
    MomentPoly r;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exps e(std::max(ea.size(), eb.size()), 0);
            for (size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
            for (size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
            r.add_term(e, ca * cb);
        }
    return r;
}

MomentPoly MomentPoly::operator*(const Coeff& c) const {
    MomentPoly r;
    for (const auto& [e, a] : terms_) r.add_term(e, a * c);
    return r;
}

MomentPoly MomentPoly::derivative(int idx) const {
    MomentPoly r;
    for (const auto& [e, c] : terms_) {
        if (static_cast<int>(e.size()) <= idx || e[static_cast<size_t>(idx)] == 0) continue;
        Exps de = e;
        int k = de[static_cast<size_t>(idx)];
        de[static_cast<size_t>(idx)] = k - 1;
        r.add_term(de, c * Coeff(Rational(k)));
    }
    return r;
}

template <class T>
T MomentPoly::evaluate(const std::vector<T>& m_values) const {
    T acc(0);
    for (const auto& [e, c] : terms_) {
        T t;
        if constexpr (std::is_same_v<T, Rational>) {
            t = c.rational_value();
        } else {
            t = static_cast<T>(to_double(c.rational_value()));
        }
        for (size_t k = 0; k < e.size(); ++k) {
            if (static_cast<size_t>(k) >= m_values.size() && e[k] > 0)
                raise(ErrorKind::Binding, "missing moment value in equilibrium evaluation");
            for (int p = 0; p < e[k]; ++p) t *= m_values[k];
        }
        acc += t;
    }
    return acc;
}

template Rational MomentPoly::evaluate<Rational>(const std::vector<Rational>&) const;
template double MomentPoly::evaluate<double>(const std::vector<double>&) const;

std::string MomentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool has_m = false;
        for (int x : e) has_m |= (x > 0);
        if (!has_m) {
            os << c.str();
            continue;
        }
        if (!c.is_one()) os << "(" << c.str() << ")*";
        bool firstm = true;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!firstm) os << "*";
            firstm = false;
            os << "m" << (k + 1);
            if (e[k] != 1) os << "^" << e[k];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(const std::string& text, const ExprEnv& env) : text_(text), env_(env) {}

    MomentPoly run() {
        MomentPoly v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        raise(ErrorKind::Parse,
              msg + " at column " + std::to_string(pos_ + 1) + " in '" + text_ + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    MomentPoly expr() {
        MomentPoly v = term();
        while (true) {
            if (eat('+')) {
                v = v + term();
            } else if (eat('-')) {
                v = v - term();
            } else {
                return v;
            }
        }
    }

    MomentPoly term() {
        MomentPoly v = factor();
        while (true) {
            if (eat('*')) {
                v = v * factor();
            } else if (eat('/')) {
                MomentPoly d = factor();
                if (!d.is_coeff()) fail("division by an expression containing moment symbols");
                Coeff dc = d.coeff_value();
                if (dc.is_zero()) fail("division by zero");
                v = v * dc.inverse();
            } else {
                return v;
            }
        }
    }

    MomentPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        MomentPoly v = atom();
        skip_ws();
        if (eat('^')) {
            long e = integer();
            if (e < 0) {
                if (!v.is_coeff()) fail("negative power of a moment expression");
                return MomentPoly(v.coeff_value().pow(e));
            }
            MomentPoly acc = MomentPoly(Coeff(1));
            for (long k = 0; k < e; ++k) acc = acc * v;
            return acc;
        }
        return v;
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer");
        return std::stol(text_.substr(start, pos_ - start));
    }

    MomentPoly atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return MomentPoly(Coeff(Rational(text_.substr(start, pos_ - start))));
        }
        if (c == '(') {
            ++pos_;
            MomentPoly v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            // m<k> is a moment symbol.
            if (name.size() >= 2 && name[0] == 'm' &&
                name.find_first_not_of("0123456789", 1) == std::string::npos) {
                int idx = std::stoi(name.substr(1));
                if (idx < 1 || idx > env_.n_moments) {
                    pos_ = start;
                    fail("unknown moment symbol '" + name + "' (only m1..m" +
                         std::to_string(env_.n_moments) + " are in scope)");
                }
                return MomentPoly::moment(idx - 1);
            }
            if (env_.lookup) {
                if (auto v = env_.lookup(name)) return MomentPoly(*v);
            }
            if (env_.allow_any_param) return MomentPoly(Coeff::param(name));
            pos_ = start;
            fail("unknown symbol '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    const ExprEnv& env_;
    size_t pos_ = 0;
};

}  // namespace

MomentPoly parse_expression(const std::string& text, const ExprEnv& env) {
    return Parser(text, env).run();
}

Coeff parse_coeff(const std::string& text, const ExprEnv& env) {
    MomentPoly p = parse_expression(text, env);
    if (!p.is_coeff()) raise(ErrorKind::Parse, "moment symbols not allowed in '" + text + "'");
    return p.coeff_value();
}

}  // namespace lbmfd
