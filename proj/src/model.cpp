/*
 * Copyright 2026 The pgsynth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pgsynth/model.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pgsynth/error.hpp"

namespace pgsynth {

namespace {

struct Token {
    enum Kind { Ident, Punct, End } kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& s)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t k = 0; k < n; k++) {
            if (s[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
            i++;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') adv(1);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) j++;
            out.push_back({Token::Ident, s.substr(i, j - i), line, col});
            adv(j - i);
        } else {
            std::string two = s.substr(i, 2);
            if (two == "->" || two == "==" || two == "!=") {
                out.push_back({Token::Punct, two, line, col});
                adv(2);
            } else if (std::string("=|;(),*+:[]").find(c) != std::string::npos) {
                out.push_back({Token::Punct, std::string(1, c), line, col});
                adv(1);
            } else {
                throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                                        ": unexpected character '" + std::string(1, c) + "'");
            }
        }
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

class Parser
{
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    HLGame parse()
    {
        std::vector<ColorClass> classes;
        while (peek().kind != Token::End) {
            const Token& kw = next();
            if (kw.kind != Token::Ident) fail(kw, "expected a declaration");
            if (kw.text == "class") {
                if (!g_.net.places.empty() || !g_.net.transitions.empty()) fail(kw, "classes must precede places and transitions");
                classes.push_back(parse_class());
                universe_ = ColorUniverse(classes);
            } else if (kw.text == "place") {
                parse_place();
            } else if (kw.text == "trans") {
                parse_trans();
            } else if (kw.text == "arc") {
                parse_arc();
            } else if (kw.text == "init") {
                parse_init();
            } else {
                fail(kw, "unknown declaration '" + kw.text + "'");
            }
        }
        g_.net.universe = universe_;
        g_.m0.tokens.resize(g_.net.places.size());
        g_.net.index_arcs();
        try {
            validate_game(g_);
        } catch (const Error& e) {
            throw Error(ErrorKind::ValidationError, e.what());
        }
        return std::move(g_);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    [[noreturn]] static void fail(const Token& t, const std::string& msg)
    {
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + msg);
    }

    bool accept(const std::string& s)
    {
        if (peek().text == s && peek().kind != Token::End) {
            next();
            return true;
        }
        return false;
    }

    const Token& expect(const std::string& s)
    {
        if (peek().text != s || peek().kind == Token::End) fail(peek(), "expected '" + s + "'");
        return next();
    }

    const Token& ident(const char* what)
    {
        if (peek().kind != Token::Ident) fail(peek(), std::string("expected ") + what);
        return next();
    }

    uint32_t class_ref()
    {
        const Token& t = ident("a class name");
        auto c = universe_.find_class(t.text);
        if (!c) fail(t, "unknown class '" + t.text + "'");
        return *c;
    }

    ColorClass parse_class()
    {
        ColorClass c;
        c.name = ident("a class name").text;
        expect("=");
        c.bounds.push_back(0);
        while (true) {
            c.colors.push_back(ident("a color").text);
            if (accept(",")) continue;
            if (accept("|")) {
                c.bounds.push_back(c.size());
                continue;
            }
            break;
        }
        c.bounds.push_back(c.size());
        expect(";");
        return c;
    }

    void parse_place()
    {
        const Token& name = ident("a place name");
        if (g_.net.find_place(name.text) || g_.net.find_transition(name.text)) fail(name, "duplicate name '" + name.text + "'");
        HLPlace p{name.text, {}};
        PlaceKind kind = PlaceKind::Sys;
        bool have_kind = false;
        while (!accept(";")) {
            const Token& key = ident("'kind' or 'type'");
            expect("=");
            if (key.text == "kind") {
                const Token& k = ident("env, sys or bad");
                if (k.text == "env") {
                    kind = PlaceKind::Env;
                } else if (k.text == "sys") {
                    kind = PlaceKind::Sys;
                } else if (k.text == "bad") {
                    kind = PlaceKind::Bad;
                } else {
                    fail(k, "expected env, sys or bad");
                }
                have_kind = true;
            } else if (key.text == "type") {
                do {
                    p.type.push_back(class_ref());
                } while (accept("*"));
            } else {
                fail(key, "unknown place attribute '" + key.text + "'");
            }
        }
        if (!have_kind) fail(name, "place without kind");
        g_.net.places.push_back(std::move(p));
        g_.kinds.push_back(kind);
    }

    uint32_t var_ref(const HLTransition& t)
    {
        const Token& v = ident("a variable");
        for (uint32_t i = 0; i < t.var_names.size(); i++) {
            if (t.var_names[i] == v.text) return i;
        }
        fail(v, "unbound variable '" + v.text + "'");
    }

    Guard guard_or(const HLTransition& t)
    {
        Guard g = guard_and(t);
        if (peek().text != "or") return g;
        Guard o{Guard::Or, 0, 0, {g}};
        while (accept("or")) o.kids.push_back(guard_and(t));
        return o;
    }

    Guard guard_and(const HLTransition& t)
    {
        Guard g = guard_unary(t);
        if (peek().text != "and") return g;
        Guard a{Guard::And, 0, 0, {g}};
        while (accept("and")) a.kids.push_back(guard_unary(t));
        return a;
    }

    Guard guard_unary(const HLTransition& t)
    {
        if (accept("not")) return Guard{Guard::Not, 0, 0, {guard_unary(t)}};
        if (accept("(")) {
            Guard g = guard_or(t);
            expect(")");
            return g;
        }
        if (accept("true")) return Guard::truth();
        const Token& at = peek();
        uint32_t x = var_ref(t);
        if (accept("==")) return Guard::eq(x, var_ref(t));
        if (accept("!=")) return Guard::neq(x, var_ref(t));
        if (accept("in")) {
            uint32_t c = class_ref();
            if (c != t.var_classes[x]) fail(at, "variable and class differ");
            expect("[");
            const Token& q = ident("a static subclass number");
            expect("]");
            unsigned long n = 0;
            try {
                n = std::stoul(q.text);
            } catch (...) {
                fail(q, "expected a number");
            }
            if (n < 1 || n > universe_.cls(c).num_static()) fail(q, "static subclass out of range");
            return Guard::in(x, static_cast<uint32_t>(n - 1));
        }
        fail(peek(), "expected ==, != or in");
    }

    void parse_trans()
    {
        const Token& name = ident("a transition name");
        if (g_.net.find_place(name.text) || g_.net.find_transition(name.text)) fail(name, "duplicate name '" + name.text + "'");
        HLTransition t{name.text, {}, {}, Guard::truth()};
        if (accept("vars")) {
            while (peek().kind == Token::Ident && peek().text != "guard") {
                const Token& v = ident("a variable");
                for (const auto& w : t.var_names) {
                    if (w == v.text) fail(v, "duplicate variable '" + v.text + "'");
                }
                expect(":");
                t.var_names.push_back(v.text);
                t.var_classes.push_back(class_ref());
                if (!accept(",")) break;
            }
        }
        if (accept("guard")) t.guard = guard_or(t);
        expect(";");
        g_.net.transitions.push_back(std::move(t));
    }

    void parse_arc()
    {
        const Token& from = ident("a place or transition");
        expect("->");
        const Token& to = ident("a place or transition");
        Arc arc{};
        auto fp = g_.net.find_place(from.text);
        auto ft = g_.net.find_transition(from.text);
        auto tp = g_.net.find_place(to.text);
        auto tt = g_.net.find_transition(to.text);
        if (fp && tt) {
            arc.place = *fp;
            arc.transition = *tt;
            arc.input = true;
        } else if (ft && tp) {
            arc.place = *tp;
            arc.transition = *ft;
            arc.input = false;
        } else {
            fail(from, "an arc connects a declared place and a declared transition");
        }
        for (const auto& a : g_.net.arcs) {
            if (a.place == arc.place && a.transition == arc.transition && a.input == arc.input) fail(from, "duplicate arc");
        }
        const auto& t = g_.net.transitions[arc.transition];
        const auto& p = g_.net.places[arc.place];
        expect("expr");
        do {
            const Token& at = peek();
            ArcTuple tuple;
            if (accept("(")) {
                if (!accept(")")) {
                    do {
                        tuple.push_back(term(t));
                    } while (accept(","));
                    expect(")");
                }
            } else {
                tuple.push_back(term(t));
            }
            if (tuple.size() != p.type.size()) fail(at, "tuple arity differs from the type of " + p.name);
            for (size_t k = 0; k < tuple.size(); k++) {
                uint32_t c = tuple[k].kind == Term::All ? tuple[k].index : t.var_classes[tuple[k].index];
                if (c != p.type[k]) fail(at, "tuple component class differs from the type of " + p.name);
            }
            arc.expr.tuples.push_back(std::move(tuple));
        } while (accept("+"));
        expect(";");
        g_.net.arcs.push_back(std::move(arc));
    }

    Term term(const HLTransition& t)
    {
        if (accept("all")) {
            expect("(");
            uint32_t c = class_ref();
            expect(")");
            return {Term::All, c};
        }
        return {Term::Var, var_ref(t)};
    }

    void parse_init()
    {
        const Token& name = ident("a place name");
        auto p = g_.net.find_place(name.text);
        if (!p) fail(name, "unknown place '" + name.text + "'");
        expect("=");
        g_.m0.tokens.resize(g_.net.places.size());
        const auto& type = g_.net.places[*p].type;
        while (!accept(";")) {
            ColorTuple c;
            const Token& at = peek();
            auto color = [&](size_t k) {
                const Token& ct = ident("a color");
                if (k >= type.size()) fail(ct, "tuple longer than the type of " + name.text);
                auto idx = universe_.find_color(type[k], ct.text);
                if (!idx) fail(ct, "unknown color '" + ct.text + "' for class " + universe_.cls(type[k]).name);
                return *idx;
            };
            if (accept("(")) {
                if (!accept(")")) {
                    do {
                        c.push_back(color(c.size()));
                    } while (accept(","));
                    expect(")");
                }
            } else {
                c.push_back(color(0));
            }
            if (c.size() != type.size()) fail(at, "tuple arity differs from the type of " + name.text);
            g_.m0.tokens[*p][c]++;
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    ColorUniverse universe_;
    HLGame g_;
};

std::string guard_text(const HLGame& g, const HLTransition& t, const Guard& gd, bool nested)
{
    switch (gd.kind) {
    case Guard::True: return "true";
    case Guard::Eq: return t.var_names[gd.a] + " == " + t.var_names[gd.b];
    case Guard::Neq: return t.var_names[gd.a] + " != " + t.var_names[gd.b];
    case Guard::In:
        return t.var_names[gd.a] + " in " + g.net.universe.cls(t.var_classes[gd.a]).name + "[" + std::to_string(gd.b + 1) + "]";
    case Guard::Not: return "not " + guard_text(g, t, gd.kids[0], true);
    case Guard::And:
    case Guard::Or: {
        std::string s;
        for (size_t i = 0; i < gd.kids.size(); i++) {
            if (i) s += gd.kind == Guard::And ? " and " : " or ";
            s += guard_text(g, t, gd.kids[i], true);
        }
        return nested ? "(" + s + ")" : s;
    }
    }
    return "true";
}

} // namespace

HLGame parse_model(const std::string& text) { return Parser(text).parse(); }

std::string serialize_model(const HLGame& g)
{
    const auto& u = g.net.universe;
    std::ostringstream out;
    for (const auto& c : u.classes()) {
        out << "class " << c.name << " =";
        for (uint32_t q = 0; q < c.num_static(); q++) {
            if (q) out << " |";
            for (uint32_t x = c.static_begin(q); x < c.static_end(q); x++) out << (x == c.static_begin(q) ? " " : ", ") << c.colors[x];
        }
        out << " ;\n";
    }
    static const char* kind_names[] = {"env", "sys", "bad"};
    for (uint32_t p = 0; p < g.net.places.size(); p++) {
        const auto& pl = g.net.places[p];
        out << "place " << pl.name << " kind=" << kind_names[static_cast<int>(g.kinds[p])];
        if (!pl.type.empty()) {
            out << " type=";
            for (size_t k = 0; k < pl.type.size(); k++) out << (k ? "*" : "") << u.cls(pl.type[k]).name;
        }
        out << " ;\n";
    }
    for (const auto& t : g.net.transitions) {
        out << "trans " << t.name;
        if (!t.var_names.empty()) {
            out << " vars ";
            for (size_t k = 0; k < t.var_names.size(); k++) out << (k ? ", " : "") << t.var_names[k] << ":" << u.cls(t.var_classes[k]).name;
        }
        out << " guard " << guard_text(g, t, t.guard, false) << " ;\n";
    }
    for (const auto& a : g.net.arcs) {
        const auto& t = g.net.transitions[a.transition];
        const auto& p = g.net.places[a.place];
        out << "arc " << (a.input ? p.name : t.name) << " -> " << (a.input ? t.name : p.name) << " expr ";
        for (size_t i = 0; i < a.expr.tuples.size(); i++) {
            if (i) out << " + ";
            out << "(";
            for (size_t k = 0; k < a.expr.tuples[i].size(); k++) {
                const auto& term = a.expr.tuples[i][k];
                if (k) out << ",";
                if (term.kind == Term::All) {
                    out << "all(" << u.cls(term.index).name << ")";
                } else {
                    out << t.var_names[term.index];
                }
            }
            out << ")";
        }
        out << " ;\n";
    }
    for (uint32_t p = 0; p < g.m0.tokens.size(); p++) {
        if (g.m0.tokens[p].empty()) continue;
        out << "init " << g.net.places[p].name << " =";
        for (const auto& [c, k] : g.m0.tokens[p]) {
            for (uint32_t r = 0; r < k; r++) {
                out << " (";
                for (size_t i = 0; i < c.size(); i++) out << (i ? "," : "") << u.cls(g.net.places[p].type[i]).colors[c[i]];
                out << ")";
            }
        }
        out << " ;\n";
    }
    return out.str();
}

std::string generate_cs(unsigned n)
{
    std::ostringstream out;
    out << "# Client/Server: " << n << " computers, one of which must end up hosting the server.\n";
    out << "class Comp =";
    for (unsigned i = 1; i <= n; i++) out << (i == 1 ? " " : ", ") << "c" << i;
    out << " ;\n"
           "class Dot = dot ;\n"
           "place Env kind=env type=Dot ;\n"
           "place I kind=env type=Comp ;\n"
           "place R kind=env type=Comp ;\n"
           "place Sys kind=sys type=Comp ;\n"
           "place A kind=sys type=Comp*Comp ;\n"
           "place B kind=bad type=Comp*Comp ;\n"
           "place H kind=sys type=Comp ;\n"
           "trans d vars x:Comp guard true ;\n"
           "trans inf vars x:Comp guard true ;\n"
           "trans a vars y:Comp, x:Comp guard true ;\n"
           "trans h vars x:Comp guard true ;\n"
           "trans b vars y:Comp, x:Comp guard true ;\n"
           "arc Env -> d expr (all(Dot)) ;\n"
           "arc d -> I expr (x) ;\n"
           "arc I -> inf expr (x) ;\n"
           "arc Sys -> inf expr (all(Comp)) ;\n"
           "arc inf -> R expr (x) ;\n"
           "arc inf -> Sys expr (all(Comp)) ;\n"
           "arc Sys -> a expr (y) ;\n"
           "arc a -> A expr (y,x) ;\n"
           "arc A -> h expr (all(Comp),x) ;\n"
           "arc R -> h expr (x) ;\n"
           "arc h -> H expr (x) ;\n"
           "arc A -> b expr (y,x) ;\n"
           "arc b -> B expr (y,x) ;\n"
           "init Env = (dot) ;\n"
           "init Sys =";
    for (unsigned i = 1; i <= n; i++) out << " (c" << i << ")";
    out << " ;\n";
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ValidationError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ValidationError, "cannot write " + path);
    out << text;
}

} // namespace pgsynth
