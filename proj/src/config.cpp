#include "dda/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdint>

#include "dda/errors.hpp"

namespace dda {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1, col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    char advance() {
        const char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_spaces() {
        while (!done() && (peek() == ' ' || peek() == '\t')) advance();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw config_error(what, line, col);
    }
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_ident(Cursor& c) {
    c.skip_spaces();
    if (!std::isalpha(static_cast<unsigned char>(c.peek())))
        c.fail("expected an identifier");
    std::string out;
    while (ident_char(c.peek())) out.push_back(c.advance());
    return out;
}

double read_number(Cursor& c) {
    c.skip_spaces();
    const int line = c.line, col = c.col;
    std::string tok;
    while (!c.done() && (std::isdigit(static_cast<unsigned char>(c.peek())) ||
                         std::string("+-.eE").find(c.peek()) != std::string::npos))
        tok.push_back(c.advance());
    if (tok.empty()) throw config_error("expected a number", line, col);
    size_t used = 0;
    double val = 0.0;
    try {
        val = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw config_error("malformed number '" + tok + "'", line, col);
    }
    if (used != tok.size()) throw config_error("malformed number '" + tok + "'", line, col);
    return val;
}

ConfigValue read_value(Cursor& c);

std::vector<double> read_list(Cursor& c) {
    c.skip_spaces();
    if (c.peek() != '[') c.fail("expected '['");
    c.advance();
    std::vector<double> out;
    c.skip_spaces();
    if (c.peek() == ']') {
        c.advance();
        return out;
    }
    while (true) {
        out.push_back(read_number(c));
        c.skip_spaces();
        if (c.peek() == ',') {
            c.advance();
            continue;
        }
        if (c.peek() == ']') {
            c.advance();
            return out;
        }
        c.fail("expected ',' or ']' in list");
    }
}

ConfigValue read_value(Cursor& c) {
    c.skip_spaces();
    ConfigValue v;
    v.line = c.line;
    v.column = c.col;
    const char first = c.peek();
    if (first == '[') {
        v.kind = ConfigValue::Kind::List;
        v.list = read_list(c);
        return v;
    }
    if (std::isalpha(static_cast<unsigned char>(first))) {
        v.kind = ConfigValue::Kind::Call;
        v.callee = read_ident(c);
        c.skip_spaces();
        if (c.peek() == '(') {
            c.advance();
            c.skip_spaces();
            if (c.peek() == ')') {
                c.advance();
                return v;
            }
            while (true) {
                const std::string key = read_ident(c);
                c.skip_spaces();
                if (c.peek() != '=') c.fail("expected '=' after argument name");
                c.advance();
                v.args[key] = read_value(c);
                c.skip_spaces();
                if (c.peek() == ',') {
                    c.advance();
                    continue;
                }
                if (c.peek() == ')') {
                    c.advance();
                    break;
                }
                c.fail("expected ',' or ')' in argument list");
            }
        }
        return v;
    }
    v.kind = ConfigValue::Kind::Number;
    v.number = read_number(c);
    return v;
}

[[noreturn]] void shape_fail(const ConfigValue& v, const std::string& what) {
    throw config_error(what, v.line, v.column);
}

double num_arg(const ConfigValue& call, const std::string& key) {
    auto it = call.args.find(key);
    if (it == call.args.end() || it->second.kind != ConfigValue::Kind::Number)
        shape_fail(call, call.callee + ": missing numeric argument '" + key + "'");
    return it->second.number;
}

double num_arg_or(const ConfigValue& call, const std::string& key, double fallback) {
    auto it = call.args.find(key);
    if (it == call.args.end()) return fallback;
    if (it->second.kind != ConfigValue::Kind::Number)
        shape_fail(call, call.callee + ": argument '" + key + "' must be a number");
    return it->second.number;
}

std::vector<double> list_arg(const ConfigValue& call, const std::string& key) {
    auto it = call.args.find(key);
    if (it == call.args.end() || it->second.kind != ConfigValue::Kind::List)
        shape_fail(call, call.callee + ": missing list argument '" + key + "'");
    return it->second.list;
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void serialize_value(const ConfigValue& v, std::string& out) {
    switch (v.kind) {
        case ConfigValue::Kind::Number:
            out += format_real(v.number);
            break;
        case ConfigValue::Kind::List: {
            out += '[';
            for (size_t i = 0; i < v.list.size(); ++i) {
                if (i) out += ',';
                out += format_real(v.list[i]);
            }
            out += ']';
            break;
        }
        case ConfigValue::Kind::Call: {
            out += v.callee;
            out += '(';
            bool first = true;
            for (const auto& [k, a] : v.args) {  // std::map: stable key order
                if (!first) out += ',';
                first = false;
                out += k;
                out += '=';
                serialize_value(a, out);
            }
            out += ')';
            break;
        }
    }
}

} // namespace

ConfigDoc parse_config(const std::string& text) {
    ConfigDoc doc;
    Cursor c{text};
    while (!c.done()) {
        c.skip_spaces();
        if (c.peek() == '\n' || c.peek() == '\r') {
            c.advance();
            continue;
        }
        if (c.peek() == '#') {  // comment to end of line
            while (!c.done() && c.peek() != '\n') c.advance();
            continue;
        }
        if (c.done()) break;
        const std::string key = read_ident(c);
        c.skip_spaces();
        if (c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
        c.advance();
        doc[key] = read_value(c);
        c.skip_spaces();
        if (!c.done() && c.peek() != '\n' && c.peek() != '\r' && c.peek() != '#')
            c.fail("unexpected trailing text after value for '" + key + "'");
    }
    return doc;
}

ConfigValue parse_config_value(const std::string& text) {
    Cursor c{text};
    ConfigValue v = read_value(c);
    c.skip_spaces();
    if (!c.done() && c.peek() != '\n') c.fail("unexpected trailing text");
    return v;
}

MongeManifold make_manifold(const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::Call) shape_fail(v, "manifold must be a constructor call");
    if (v.callee == "veronese") return MongeManifold::veronese(int(num_arg(v, "n")));
    if (v.callee == "sphere") return MongeManifold::sphere_patch();
    if (v.callee == "paraboloid") return MongeManifold::paraboloid();
    if (v.callee == "identity") {
        const int n = int(num_arg(v, "n"));
        const double lo = num_arg_or(v, "lo", 0.0), hi = num_arg_or(v, "hi", 1.0);
        Box B;
        B.lo.assign(n, lo);
        B.hi.assign(n, hi);
        return MongeManifold::identity(n, B);
    }
    shape_fail(v, "unknown manifold '" + v.callee + "'");
}

Shift make_shift(const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::Call) shape_fail(v, "theta must be a constructor call");
    if (v.callee == "zero") return Shift::zero();
    if (v.callee == "constant") return Shift::constant(num_arg(v, "c"));
    if (v.callee == "poly") return Shift::poly(list_arg(v, "coeffs"));
    shape_fail(v, "unknown shift '" + v.callee + "'");
}

ApproxFunction make_psi(const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::Call) shape_fail(v, "psi must be a constructor call");
    if (v.callee == "power")
        return PowerLaw{num_arg(v, "tau"), num_arg_or(v, "scale", 1.0)};
    if (v.callee == "powerlog") return PowerLog{num_arg(v, "tau"), num_arg(v, "beta")};
    if (v.callee == "table") return Table{list_arg(v, "t"), list_arg(v, "y")};
    shape_fail(v, "unknown psi family '" + v.callee + "'");
}

QuasinormWeights make_weights(const ConfigValue& v) {
    if (v.kind != ConfigValue::Kind::List) shape_fail(v, "v must be a list of weights");
    try {
        return QuasinormWeights(v.list);
    } catch (const input_error& e) {
        shape_fail(v, e.what());
    }
}

std::string canonical_config(const ConfigDoc& doc) {
    std::string out;
    for (const auto& [key, value] : doc) {
        out += key;
        out += '=';
        serialize_value(value, out);
        out += '\n';
    }
    return out;
}

std::string config_hash(const std::string& canonical) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace dda
