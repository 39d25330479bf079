#include "lbmfd/schemefile.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "lbmfd/expr.hpp"

namespace lbmfd {

namespace {

struct Line {
    int number;
    std::string text;
};

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
    raise(ErrorKind::Parse, origin + ":" + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

SchemeDocument parse_scheme_text(const std::string& text, const std::string& origin) {
    std::vector<Line> lines;
    {
        std::istringstream is(text);
        std::string raw;
        int n = 0;
        while (std::getline(is, raw)) {
            ++n;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            std::string s = strip(raw);
            if (!s.empty()) lines.push_back({n, s});
        }
    }
    if (lines.empty() || lines[0].text != "lbm-scheme v1")
        parse_fail(origin, lines.empty() ? 1 : lines[0].number,
                   "expected header 'lbm-scheme v1'");

    // First pass: collect raw fields.
    int dimension = -1, conserved = -1;
    std::string lattice_speed_str;
    int lattice_speed_line = 0;
    std::vector<std::pair<int, std::string>> velocity_toks;
    std::vector<Line> moment_rows;
    std::vector<std::string> relaxation_toks;
    int relaxation_line = 0;
    std::map<int, Line> equilibrium_lines;  // moment index (1-based)
    std::vector<std::pair<std::string, std::pair<int, std::string>>> parameter_lines;

    size_t li = 1;
    while (li < lines.size()) {
        const Line& l = lines[li];
        size_t colon = l.text.find(':');
        if (colon == std::string::npos) parse_fail(origin, l.number, "expected 'key: value'");
        std::string key = strip(l.text.substr(0, colon));
        std::string value = strip(l.text.substr(colon + 1));
        if (key == "dimension") {
            dimension = std::stoi(value);
            ++li;
        } else if (key == "conserved") {
            conserved = std::stoi(value);
            ++li;
        } else if (key == "lattice_speed") {
            lattice_speed_str = value;
            lattice_speed_line = l.number;
            ++li;
        } else if (key == "velocities") {
            // Tokens of the form (a) or (a,b) or (a,b,c).
            std::string cur;
            for (char c : value) {
                if (c == '(') {
                    cur = "(";
                } else if (c == ')') {
                    cur += ')';
                    velocity_toks.emplace_back(l.number, cur);
                    cur.clear();
                } else if (!cur.empty()) {
                    cur += c;
                }
            }
            if (!cur.empty()) parse_fail(origin, l.number, "unbalanced parenthesis in velocities");
            ++li;
        } else if (key == "moments") {
            if (!value.empty()) parse_fail(origin, l.number, "matrix rows start on the next line");
            ++li;
            while (li < lines.size() && lines[li].text.find(':') == std::string::npos) {
                moment_rows.push_back(lines[li]);
                ++li;
            }
        } else if (key == "relaxation") {
            relaxation_toks = split_ws(value);
            relaxation_line = l.number;
            ++li;
        } else if (key.rfind("equilibrium", 0) == 0) {
            std::string which = strip(key.substr(std::string("equilibrium").size()));
            if (which.size() < 2 || which[0] != 'm')
                parse_fail(origin, l.number, "expected 'equilibrium m<k>:'");
            int idx = std::stoi(which.substr(1));
            Line stored{l.number, value};
            if (!equilibrium_lines.emplace(idx, stored).second)
                parse_fail(origin, l.number, "duplicate equilibrium for m" + std::to_string(idx));
            ++li;
        } else if (key.rfind("parameter", 0) == 0) {
            std::string name = strip(key.substr(std::string("parameter").size()));
            if (name.empty()) parse_fail(origin, l.number, "expected 'parameter <name>: [value]'");
            if (!split_ws(value).empty() && split_ws(value).size() > 1)
                parse_fail(origin, l.number, "unexpected tokens after the binding");
            parameter_lines.push_back({name, {l.number, value}});
            ++li;
        } else {
            parse_fail(origin, l.number, "unknown key '" + key + "'");
        }
    }

    if (dimension < 1 || dimension > 3) parse_fail(origin, 1, "dimension must be declared as 1, 2 or 3");
    if (conserved < 1) parse_fail(origin, 1, "conserved count must be declared");
    if (velocity_toks.empty()) parse_fail(origin, 1, "velocities must be declared");
    if (lattice_speed_str.empty()) parse_fail(origin, 1, "lattice_speed must be declared");
    int q = static_cast<int>(velocity_toks.size());
    if (static_cast<int>(moment_rows.size()) != q)
        parse_fail(origin, moment_rows.empty() ? 1 : moment_rows[0].number,
                   "moments must have " + std::to_string(q) + " rows, got " +
                       std::to_string(moment_rows.size()));
    if (static_cast<int>(relaxation_toks.size()) != q)
        parse_fail(origin, relaxation_line, "relaxation must list " + std::to_string(q) + " rates");

    SchemeDocument doc;
    LBMScheme& s = doc.scheme;
    s.d = dimension;
    s.q = q;
    s.N = conserved;

    // Velocities.
    for (auto& [line, tok] : velocity_toks) {
        std::string inner = tok.substr(1, tok.size() - 2);
        for (char& c : inner)
            if (c == ',') c = ' ';
        auto parts = split_ws(inner);
        if (static_cast<int>(parts.size()) != dimension)
            parse_fail(origin, line, "velocity " + tok + " must have " +
                                         std::to_string(dimension) + " component(s)");
        SpaceExp z{0, 0, 0};
        try {
            for (size_t k = 0; k < parts.size(); ++k) z[k] = std::stoi(parts[k]);
        } catch (const std::exception&) {
            parse_fail(origin, line, "velocity components must be integers in " + tok);
        }
        s.velocities.push_back(z);
    }

    // Declared symbols: parameters, the lattice_speed symbol when symbolic,
    // and symbolic relaxation rates.
    std::map<std::string, std::pair<int, std::string>> declared;  // name -> (line, binding str)
    for (auto& [name, lb] : parameter_lines) {
        if (!declared.emplace(name, lb).second)
            parse_fail(origin, lb.first, "duplicate parameter '" + name + "'");
    }
    auto is_number = [](const std::string& t) {
        return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-' ||
                              t[0] == '+');
    };
    auto is_identifier = [](const std::string& t) {
        if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_'))
            return false;
        for (char c : t)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
        return true;
    };
    if (is_identifier(lattice_speed_str)) {
        doc.lattice_speed_name = lattice_speed_str;
        declared.emplace(lattice_speed_str, std::make_pair(lattice_speed_line, std::string()));
    }
    for (const std::string& t : relaxation_toks)
        if (is_identifier(t)) declared.emplace(t, std::make_pair(relaxation_line, std::string()));

    ExprEnv env;
    env.n_moments = s.N;
    env.lookup = [&declared](const std::string& name) -> std::optional<Coeff> {
        if (declared.count(name)) return Coeff::param(name);
        return std::nullopt;
    };
    auto parse_entry = [&](const std::string& text2, int line, int n_moments) {
        ExprEnv e = env;
        e.n_moments = n_moments;
        try {
            return parse_expression(text2, e);
        } catch (const Error& err) {
            parse_fail(origin, line, err.what());
        }
    };

    // Lattice speed.
    if (is_identifier(lattice_speed_str)) {
        s.lattice_speed = Coeff::param(lattice_speed_str);
    } else if (is_number(lattice_speed_str)) {
        s.lattice_speed = Coeff(rational_from_string(lattice_speed_str));
    } else {
        parse_fail(origin, lattice_speed_line, "lattice_speed must be a number or a symbol");
    }

    // Moment matrix.
    s.moment_matrix = RingMatrix<Coeff>(q);
    for (int i = 0; i < q; ++i) {
        auto toks = split_ws(moment_rows[static_cast<size_t>(i)].text);
        if (static_cast<int>(toks.size()) != q)
            parse_fail(origin, moment_rows[static_cast<size_t>(i)].number,
                       "moment row needs " + std::to_string(q) + " entries, got " +
                           std::to_string(toks.size()));
        for (int j = 0; j < q; ++j) {
            MomentPoly e = parse_entry(toks[static_cast<size_t>(j)],
                                       moment_rows[static_cast<size_t>(i)].number, 0);
            s.moment_matrix.at(i, j) = e.coeff_value();
        }
    }

    // Relaxation rates.
    for (const std::string& t : relaxation_toks) {
        if (is_identifier(t)) {
            s.rates.push_back(Coeff::param(t));
        } else {
            MomentPoly e = parse_entry(t, relaxation_line, 0);
            s.rates.push_back(e.coeff_value());
        }
    }

    // Equilibria: conserved implied, non-conserved required.
    for (int i = 0; i < s.N; ++i) {
        if (equilibrium_lines.count(i + 1))
            parse_fail(origin, equilibrium_lines.at(i + 1).number,
                       "m" + std::to_string(i + 1) +
                           " is conserved; its equilibrium is fixed by conservation");
        s.equilibria.push_back(MomentPoly::moment(i));
    }
    for (int j = s.N; j < q; ++j) {
        auto it = equilibrium_lines.find(j + 1);
        if (it == equilibrium_lines.end())
            parse_fail(origin, 1, "missing equilibrium for m" + std::to_string(j + 1));
        s.equilibria.push_back(parse_entry(it->second.text, it->second.number, s.N));
    }
    for (auto& [idx, line] : equilibrium_lines)
        if (idx < 1 || idx > q)
            parse_fail(origin, line.number, "equilibrium index m" + std::to_string(idx) +
                                                " outside 1..q");

    // Bindings.
    for (auto& [name, lb] : parameter_lines) {
        if (lb.second.empty()) continue;
        doc.bindings.emplace(Param(name), rational_from_string(lb.second));
    }

    ValidationReport vr = validate(s);
    if (!vr.ok()) raise(ErrorKind::Validation, origin + ": invalid scheme:\n" + vr.str());
    return doc;
}

SchemeDocument parse_scheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Usage, "cannot open scheme file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scheme_text(ss.str(), path);
}

std::string serialize_scheme(const SchemeDocument& doc) {
    const LBMScheme& s = doc.scheme;
    std::ostringstream os;
    os << "lbm-scheme v1\n";
    os << "dimension: " << s.d << "\n";
    os << "velocities:";
    for (const auto& c : s.velocities) {
        os << " (";
        for (int k = 0; k < s.d; ++k) os << (k ? "," : "") << c[static_cast<size_t>(k)];
        os << ")";
    }
    os << "\n";
    os << "lattice_speed: " << s.lattice_speed.str() << "\n";
    os << "conserved: " << s.N << "\n";
    os << "moments:\n";
    for (int i = 0; i < s.q; ++i) {
        os << " ";
        for (int j = 0; j < s.q; ++j) {
            std::string e = s.moment_matrix.at(i, j).str();
            std::string compact;
            for (char c : e)
                if (c != ' ') compact += c;
            os << " " << compact;
        }
        os << "\n";
    }
    os << "relaxation:";
    for (const auto& r : s.rates) {
        std::string compact;
        for (char c : r.str())
            if (c != ' ') compact += c;
        os << " " << compact;
    }
    os << "\n";
    for (int j = s.N; j < s.q; ++j) {
        std::string e = s.equilibria[static_cast<size_t>(j)].str();
        std::string compact;
        for (char c : e)
            if (c != ' ') compact += c;
        os << "equilibrium m" << (j + 1) << ": " << compact << "\n";
    }
    // Parameters: everything symbolic that appears anywhere, with bindings.
    std::set<std::string> emitted;
    auto emit_param = [&](Param p) {
        std::string name = p.name();
        if (!emitted.insert(name).second) return;
        os << "parameter " << name << ":";
        auto it = doc.bindings.find(p);
        if (it != doc.bindings.end()) os << " " << it->second.get_str();
        os << "\n";
    };
    for (int i = 0; i < s.q; ++i)
        for (int j = 0; j < s.q; ++j)
            for (Param p : s.moment_matrix.at(i, j).params()) emit_param(p);
    for (const auto& r : s.rates)
        for (Param p : r.params()) emit_param(p);
    for (const auto& e : s.equilibria)
        for (const auto& [exp, c] : e.terms())
            for (Param p : c.params()) emit_param(p);
    for (const auto& [p, v] : doc.bindings) emit_param(p);
    return os.str();
}

}  // namespace lbmfd
