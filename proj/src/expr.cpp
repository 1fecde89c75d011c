#include "divseq/expr.hpp"

#include <cctype>
#include <set>

namespace divseq {

SyntaxError::SyntaxError(int line, int column, const std::string& what)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

constexpr unsigned max_exponent = 4096;

class Parser {
  public:
    Parser(const std::string& text, int line, int column0) : s_(text), line_(line), col0_(column0) {}

    ParsedExpr run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        ParsedExpr e = expr();
        skip();
        if (pos_ != s_.size()) unexpected();
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        throw SyntaxError(line_, col0_ + static_cast<int>(at), what);
    }
    [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
    [[noreturn]] void unexpected() const {
        const char c = s_[pos_];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '(')
            fail("implicit multiplication is not allowed; write '*'");
        if (c == '/') fail("'/' is only allowed inside a rational literal");
        fail(std::string("unexpected character '") + c + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool at_end() {
        skip();
        return pos_ == s_.size();
    }

    std::string merge_var(const std::string& a, const std::string& b, std::size_t at) const {
        if (a.empty()) return b;
        if (b.empty() || a == b) return a;
        fail("expression mixes the variables " + a + " and " + b, at);
    }

    ParsedExpr add(ParsedExpr x, const ParsedExpr& y, bool minus, std::size_t at) const {
        x.var = merge_var(x.var, y.var, at);
        if (minus) {
            x.a -= y.a;
            x.b -= y.b;
        } else {
            x.a += y.a;
            x.b += y.b;
        }
        return x;
    }

    ParsedExpr mul(const ParsedExpr& x, const ParsedExpr& y, std::size_t at) const {
        if (x.has_v() && y.has_v()) fail("v may appear at most linearly", at);
        ParsedExpr r;
        r.var = merge_var(x.var, y.var, at);
        r.a = x.a * y.a;
        r.b = x.a * y.b + x.b * y.a;
        return r;
    }

    ParsedExpr expr() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        ParsedExpr acc = term();
        if (neg) {
            acc.a = -acc.a;
            acc.b = -acc.b;
        }
        for (;;) {
            skip();
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                const bool minus = s_[pos_] == '-';
                const std::size_t at = pos_++;
                acc = add(std::move(acc), term(), minus, at);
            } else {
                return acc;
            }
        }
    }

    ParsedExpr term() {
        ParsedExpr acc = factor();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (!accept('*')) return acc;
            acc = mul(acc, factor(), at);
        }
    }

    ParsedExpr factor() {
        ParsedExpr b = base();
        skip();
        const std::size_t at = pos_;
        if (!accept('^')) return b;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an unsigned integer exponent");
        const std::string digits = s_.substr(start, pos_ - start);
        if (digits.size() > 6 || std::stoul(digits) > max_exponent)
            fail("exponent exceeds " + std::to_string(max_exponent), start);
        const unsigned e = static_cast<unsigned>(std::stoul(digits));
        if (b.has_v() && e > 1) fail("v may appear at most linearly", at);
        ParsedExpr r;
        r.var = b.var;
        if (e == 0) {
            r.a = QPoly::constant(1);
            return r;
        }
        r.a = pow(b.a, e);
        r.b = b.b;
        return r;
    }

    ParsedExpr base() {
        skip();
        if (pos_ == s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ParsedExpr inner = expr();
            if (accept(';')) {
                const std::size_t at = pos_;
                ParsedExpr vpart = expr();
                if (inner.has_v() || vpart.has_v()) fail("pair components must not contain v", at);
                inner.var = merge_var(inner.var, vpart.var, at);
                inner.b = vpart.a;
            }
            if (!accept(')')) {
                if (pos_ < s_.size()) unexpected();
                fail("missing ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            ParsedExpr r;
            if (name == "v") {
                r.b = QPoly::constant(1);
            } else if (name == "T" || name == "u" || name == "x" || name == "y") {
                r.a = QPoly::variable();
                r.var = name;
            } else {
                fail("unknown variable '" + name + "'", start);
            }
            return r;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    ParsedExpr rational() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Integer num(s_.substr(start, pos_ - start));
        Integer den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            const std::size_t slash = pos_++;
            const std::size_t d0 = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (d0 == pos_) fail("'/' is only allowed inside a rational literal", slash);
            den = Integer(s_.substr(d0, pos_ - d0));
            if (den == 0) fail("zero denominator", d0);
        }
        ParsedExpr r;
        r.a = QPoly::constant(fraction(num, den));
        return r;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_, col0_;
};

const std::set<std::string>& known_names() {
    static const std::set<std::string> names = {"s",   "q",   "f",   "g",   "a1",  "a2",  "a3",     "a4",
                                                "a6",  "C.h", "C.g", "P.x", "P.y", "kernel", "p"};
    return names;
}

const std::set<std::string>& known_kinds() {
    static const std::set<std::string> kinds = {"lucas", "eds", "isogeny-pair", "factor"};
    return kinds;
}

std::string strip(const std::string& s, std::size_t& offset) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    offset = b;
    return s.substr(b, e - b);
}

}  // namespace

ParsedExpr parse_expression(const std::string& text, int line) { return Parser(text, line, 1).run(); }

QPoly parse_polynomial(const std::string& text, int line) {
    ParsedExpr e = parse_expression(text, line);
    if (e.has_v()) throw SyntaxError(line, 1, "v is not allowed in a polynomial");
    return e.a;
}

bool InputSpec::has(const std::string& name) const { return bindings.count(name) > 0; }

const ParsedExpr& InputSpec::get(const std::string& name) const {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw InputError("missing binding '" + name + "'");
    return it->second;
}

QPoly InputSpec::polynomial(const std::string& name) const {
    const ParsedExpr& e = get(name);
    if (e.has_v()) throw InputError("binding '" + name + "' must not contain v");
    return e.a;
}

std::pair<QFunction, QFunction> InputSpec::element(const std::string& name) const {
    if (has(name)) {
        if (has(name + ".num") || has(name + ".den"))
            throw InputError("binding '" + name + "' is given both directly and as num/den");
        const ParsedExpr& e = get(name);
        return {QFunction(e.a), QFunction(e.b)};
    }
    if (!has(name + ".num")) throw InputError("missing binding '" + name + "' (or '" + name + ".num')");
    const ParsedExpr& num = get(name + ".num");
    QPoly den = has(name + ".den") ? polynomial(name + ".den") : QPoly::constant(1);
    if (den.is_zero()) throw InputError("binding '" + name + ".den' is zero");
    return {QFunction(num.a, den), QFunction(num.b, den)};
}

QFunction InputSpec::function(const std::string& name) const {
    auto [a, b] = element(name);
    if (!b.is_zero()) throw InputError("binding '" + name + "' must not contain v");
    return a;
}

InputSpec parse_input(const std::string& text) {
    InputSpec spec;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t off = 0;
        if (strip(line, off).empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw SyntaxError(line_no, static_cast<int>(off) + 1, "expected 'name = expr'");
        std::size_t name_off = 0, value_off = 0;
        const std::string name = strip(line.substr(0, eq), name_off);
        const std::string value = strip(line.substr(eq + 1), value_off);
        const int name_col = static_cast<int>(name_off) + 1;
        const int value_col = static_cast<int>(eq + 1 + value_off) + 1;
        if (name.empty()) throw SyntaxError(line_no, name_col, "missing binding name");
        if (name == "kind") {
            if (!known_kinds().count(value)) throw SyntaxError(line_no, value_col, "unknown kind '" + value + "'");
            if (!spec.kind.empty()) throw SyntaxError(line_no, name_col, "duplicate binding 'kind'");
            spec.kind = value;
            continue;
        }
        std::string root = name;
        for (const char* suffix : {".num", ".den"}) {
            const std::string sfx = suffix;
            if (root.size() > sfx.size() && root.compare(root.size() - sfx.size(), sfx.size(), sfx) == 0)
                root.erase(root.size() - sfx.size());
        }
        if (!known_names().count(root)) throw SyntaxError(line_no, name_col, "unknown binding '" + name + "'");
        if (spec.has(name)) throw SyntaxError(line_no, name_col, "duplicate binding '" + name + "'");
        if (value.empty()) throw SyntaxError(line_no, value_col, "missing expression");
        spec.bindings.emplace(name, Parser(value, line_no, value_col).run());
        spec.lines.emplace(name, line_no);
    }
    if (spec.kind.empty()) {
        auto any = [&](std::initializer_list<const char*> names) {
            for (const char* n : names)
                if (spec.has(n) || spec.has(std::string(n) + ".num")) return true;
            return false;
        };
        if (any({"kernel"})) spec.kind = "isogeny-pair";
        else if (any({"P.x", "P.y"})) spec.kind = "eds";
        else if (any({"f", "g", "s", "q"})) spec.kind = "lucas";
        else if (any({"p"})) spec.kind = "factor";
        else throw InputError("cannot infer the spec kind; add a 'kind = ...' line");
    }
    return spec;
}

}  // namespace divseq
