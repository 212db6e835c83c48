#include "szg/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "szg/csv.hpp"

namespace szg {

namespace {

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw invalid_input("config:" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                        msg);
}

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line = 1, col = 1;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    void advance() {
        if (done()) return;
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }
    // whitespace and comments; newlines only when crossing brackets
    void skip_ws(bool with_newlines) {
        for (;;) {
            char c = peek();
            if (c == '#') {
                while (!done() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || (with_newlines && c == '\n')) {
                advance();
            } else {
                return;
            }
        }
    }
};

bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

bool token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+' ||
           c == '.';
}

std::string parse_key(Cursor& cur) {
    int line = cur.line, col = cur.col;
    std::string key;
    while (key_char(cur.peek())) {
        key += cur.peek();
        cur.advance();
    }
    if (key.empty()) fail(line, col, "expected a key");
    if (key.front() == '.' || key.back() == '.' || key.find("..") != std::string::npos)
        fail(line, col, "malformed key '" + key + "'");
    return key;
}

bool try_parse_complex(const std::string& s) {
    try {
        parse_complex(s);
        return true;
    } catch (const invalid_input&) {
        return false;
    }
}

ConfigValue parse_value(Cursor& cur, int depth);

ConfigValue parse_scalar(Cursor& cur) {
    ConfigValue v;
    v.line = cur.line;
    v.col = cur.col;
    if (cur.peek() == '"') {
        cur.advance();
        v.kind = ConfigValue::Kind::string;
        while (cur.peek() != '"') {
            if (cur.done() || cur.peek() == '\n') fail(v.line, v.col, "unterminated string");
            char c = cur.peek();
            if (c == '\\') {
                cur.advance();
                char e = cur.peek();
                if (e == '"' || e == '\\')
                    v.str += e;
                else
                    fail(cur.line, cur.col, "unsupported escape");
            } else {
                v.str += c;
            }
            cur.advance();
        }
        cur.advance();
        return v;
    }
    std::string tok;
    while (token_char(cur.peek())) {
        tok += cur.peek();
        cur.advance();
    }
    if (tok.empty()) fail(v.line, v.col, "expected a value");
    if (tok == "true" || tok == "false") {
        v.kind = ConfigValue::Kind::boolean;
        v.flag = tok == "true";
        return v;
    }
    const char* p = tok.c_str();
    char* end = nullptr;
    double num = std::strtod(p, &end);
    if (end != p && *end == '\0') {
        v.kind = ConfigValue::Kind::number;
        v.num = num;
        return v;
    }
    bool bare = std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_';
    if (bare || try_parse_complex(tok)) {
        v.kind = ConfigValue::Kind::string;
        v.str = tok;
        return v;
    }
    fail(v.line, v.col, "bad value '" + tok + "'");
}

ConfigValue parse_value(Cursor& cur, int depth) {
    if (depth > 16) fail(cur.line, cur.col, "value nested too deeply");
    if (cur.peek() != '[') return parse_scalar(cur);
    ConfigValue v;
    v.kind = ConfigValue::Kind::list;
    v.line = cur.line;
    v.col = cur.col;
    cur.advance();
    cur.skip_ws(true);
    if (cur.peek() == ']') {
        cur.advance();
        return v;
    }
    for (;;) {
        if (cur.peek() == '{') fail(cur.line, cur.col, "tables are not allowed inside lists");
        v.items.push_back(parse_value(cur, depth + 1));
        cur.skip_ws(true);
        if (cur.peek() == ',') {
            cur.advance();
            cur.skip_ws(true);
            continue;
        }
        if (cur.peek() == ']') {
            cur.advance();
            return v;
        }
        fail(cur.line, cur.col, "expected ',' or ']' in list");
    }
}

void insert_value(ConfigMap& m, const std::string& key, ConfigValue v, int line, int col) {
    if (!m.emplace(key, std::move(v)).second) fail(line, col, "duplicate key '" + key + "'");
}

void parse_assignment_rhs(ConfigMap& m, const std::string& prefix, Cursor& cur, int depth) {
    if (depth > 16) fail(cur.line, cur.col, "table nested too deeply");
    cur.skip_ws(false);
    if (cur.peek() == '{') {
        cur.advance();
        cur.skip_ws(true);
        if (cur.peek() == '}') {
            cur.advance();
            return;
        }
        for (;;) {
            int kl = cur.line, kc = cur.col;
            std::string sub = parse_key(cur);
            if (sub.find('.') != std::string::npos)
                fail(kl, kc, "dotted keys are not allowed inside tables");
            cur.skip_ws(true);
            if (cur.peek() != '=') fail(cur.line, cur.col, "expected '=' after key");
            cur.advance();
            cur.skip_ws(true);
            parse_assignment_rhs(m, prefix + "." + sub, cur, depth + 1);
            cur.skip_ws(true);
            if (cur.peek() == ',') {
                cur.advance();
                cur.skip_ws(true);
                continue;
            }
            if (cur.peek() == '}') {
                cur.advance();
                return;
            }
            fail(cur.line, cur.col, "expected ',' or '}' in table");
        }
    }
    int vl = cur.line, vc = cur.col;
    insert_value(m, prefix, parse_value(cur, 0), vl, vc);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap m;
    Cursor cur{text};
    for (;;) {
        cur.skip_ws(true);
        if (cur.done()) return m;
        std::string key = parse_key(cur);
        cur.skip_ws(false);
        if (cur.peek() != '=') fail(cur.line, cur.col, "expected '=' after key '" + key + "'");
        cur.advance();
        parse_assignment_rhs(m, key, cur, 0);
        cur.skip_ws(false);
        if (!cur.done() && cur.peek() != '\n')
            fail(cur.line, cur.col, "trailing characters after value");
    }
}

ConfigMap parse_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

cpx parse_complex(const std::string& in) {
    std::string s;
    for (char c : in)
        if (c != ' ' && c != '\t') s += c;
    if (s.empty()) throw invalid_input("empty complex literal");
    auto pdf = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        const char* p = part.c_str();
        char* end = nullptr;
        double v = std::strtod(p, &end);
        if (end == p || *end != '\0')
            throw invalid_input("bad complex literal '" + in + "'");
        return v;
    };
    char last = s.back();
    if (last != 'i' && last != 'I') return cpx(pdf(s), 0.0);
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t j = body.size(); j-- > 1;) {
        if ((body[j] == '+' || body[j] == '-') && body[j - 1] != 'e' && body[j - 1] != 'E') {
            split = j;
            break;
        }
    }
    if (split == std::string::npos) return cpx(0.0, pdf(body));
    return cpx(pdf(body.substr(0, split)), pdf(body.substr(split)));
}

const ConfigValue* ConfigReader::take(const std::string& key) {
    auto it = m_.find(key);
    if (it == m_.end()) return nullptr;
    used_[key] = true;
    return &it->second;
}

double ConfigReader::number(const std::string& key, double def) {
    const ConfigValue* v = take(key);
    if (!v) return def;
    if (v->kind != ConfigValue::Kind::number)
        fail(v->line, v->col, "key '" + key + "' must be a number");
    return v->num;
}

long ConfigReader::integer(const std::string& key, long def) {
    const ConfigValue* v = take(key);
    if (!v) return def;
    if (v->kind != ConfigValue::Kind::number || v->num != std::floor(v->num))
        fail(v->line, v->col, "key '" + key + "' must be an integer");
    return static_cast<long>(v->num);
}

std::string ConfigReader::str(const std::string& key, const std::string& def) {
    const ConfigValue* v = take(key);
    if (!v) return def;
    if (v->kind != ConfigValue::Kind::string)
        fail(v->line, v->col, "key '" + key + "' must be a string");
    return v->str;
}

bool ConfigReader::boolean(const std::string& key, bool def) {
    const ConfigValue* v = take(key);
    if (!v) return def;
    if (v->kind != ConfigValue::Kind::boolean)
        fail(v->line, v->col, "key '" + key + "' must be true or false");
    return v->flag;
}

std::vector<double> ConfigReader::numbers(const std::string& key, std::vector<double> def) {
    const ConfigValue* v = take(key);
    if (!v) return def;
    if (v->kind == ConfigValue::Kind::number) return {v->num};
    if (v->kind != ConfigValue::Kind::list)
        fail(v->line, v->col, "key '" + key + "' must be a list of numbers");
    std::vector<double> out;
    for (const ConfigValue& item : v->items) {
        if (item.kind != ConfigValue::Kind::number)
            fail(item.line, item.col, "key '" + key + "' must contain only numbers");
        out.push_back(item.num);
    }
    return out;
}

namespace {

cpx value_to_complex(const ConfigValue& v, const std::string& key) {
    if (v.kind == ConfigValue::Kind::number) return cpx(v.num, 0.0);
    if (v.kind == ConfigValue::Kind::string) {
        try {
            return parse_complex(v.str);
        } catch (const invalid_input&) {
            fail(v.line, v.col, "key '" + key + "': bad complex literal '" + v.str + "'");
        }
    }
    if (v.kind == ConfigValue::Kind::list && v.items.size() == 2 &&
        v.items[0].kind == ConfigValue::Kind::number &&
        v.items[1].kind == ConfigValue::Kind::number)
        return cpx(v.items[0].num, v.items[1].num);
    fail(v.line, v.col, "key '" + key + "' must be a complex value ('a+bi' or [re, im])");
}

}  // namespace

cpx ConfigReader::complex_val(const std::string& key, cpx def) {
    const ConfigValue* v = take(key);
    if (!v) return def;
    return value_to_complex(*v, key);
}

std::vector<cpx> ConfigReader::complex_list(const std::string& key) {
    const ConfigValue* v = take(key);
    if (!v) return {};
    if (v->kind != ConfigValue::Kind::list)
        fail(v->line, v->col, "key '" + key + "' must be a list");
    std::vector<cpx> out;
    for (const ConfigValue& item : v->items) out.push_back(value_to_complex(item, key));
    return out;
}

void ConfigReader::finish() const {
    std::string unknown;
    for (const auto& [key, value] : m_) {
        if (used_.count(key)) continue;
        if (!unknown.empty()) unknown += ", ";
        unknown += "'" + key + "' (line " + std::to_string(value.line) + ")";
    }
    if (!unknown.empty()) throw invalid_input("unknown config key(s): " + unknown);
}

}  // namespace szg
