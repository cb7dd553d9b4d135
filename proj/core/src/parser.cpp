#include "suspension/parser.hpp"

#include "suspension/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>

namespace suspension {

namespace {

class Cursor {
  public:
    Cursor(const std::string& text, const GrowthSpec& spec) : text_(text), spec_(spec) {}

    const GrowthSpec& spec() const { return spec_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool eat_word(const char* word) {
        skip_ws();
        std::size_t len = std::strlen(word);
        if (text_.compare(pos_, len, word) != 0) return false;
        pos_ += len;
        return true;
    }

    double number() {
        skip_ws();
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    BigInt integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return BigInt(text_.substr(start, pos_ - start));
    }

    std::string bits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) ++pos_;
        if (pos_ == start) fail("expected a bit string");
        return text_.substr(start, pos_ - start);
    }

    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ParseError(why + " at position " + std::to_string(pos_) + " in \"" + text_ + "\"");
    }

  private:
    const std::string& text_;
    const GrowthSpec& spec_;
    std::size_t pos_ = 0;
};

Rectangle rectangle(Cursor& c) {
    Column column;
    if (c.eat('C')) {
        c.expect('(');
        BigInt k = c.integer();
        if (k < 0 || k > 4096) c.fail("column class out of range");
        column = Column::column_class(k.convert_to<int>());
        c.expect(')');
    } else if (c.eat('P')) {
        c.expect('(');
        column = Column::prefix(c.bits());
        c.expect(')');
    } else {
        c.fail("expected C(k) or P(bits)");
    }
    c.expect('[');
    BigInt lo = c.integer();
    c.expect('.');
    c.expect('.');
    BigInt hi = c.integer();
    c.expect(']');
    return make_rectangle(std::move(column), std::move(lo), std::move(hi), c.spec());
}

RegionSet region(Cursor& c) {
    std::vector<Rectangle> parts;
    parts.push_back(rectangle(c));
    while (c.eat('+')) parts.push_back(rectangle(c));
    return RegionSet::from_parts(std::move(parts));
}

SimpleFunction simple(Cursor& c) {
    std::vector<SimpleFunction::Term> terms;
    do {
        double coeff = 1.0;
        // optional leading coefficient; the rectangle itself starts with C or P
        if (c.peek() != 'C' && c.peek() != 'P') {
            coeff = c.number();
            c.expect('*');
        }
        terms.push_back(SimpleFunction::Term{coeff, rectangle(c)});
    } while (c.eat('+'));
    return SimpleFunction(std::move(terms));
}

Observable expr(Cursor& c);

Observable factor(Cursor& c) {
    if (c.eat('(')) {
        Observable inner = expr(c);
        c.expect(')');
        return inner;
    }
    if (c.eat_word("I1")) {
        c.expect('(');
        SimpleFunction f = simple(c);
        c.expect(')');
        return Observable::i1(std::move(f));
    }
    if (c.eat('N')) {
        c.expect('(');
        RegionSet r = region(c);
        c.expect(')');
        return Observable::count(std::move(r));
    }
    return Observable::constant(c.number());
}

Observable term(Cursor& c) {
    Observable out = factor(c);
    while (c.eat('*')) out = out * factor(c);
    return out;
}

Observable expr(Cursor& c) {
    Observable out = term(c);
    for (;;) {
        if (c.eat('+')) {
            out = out + term(c);
        } else if (c.eat('-')) {
            out = out - term(c);
        } else {
            return out;
        }
    }
}

}  // namespace

Rectangle parse_rectangle(const std::string& text, const GrowthSpec& spec) {
    Cursor c(text, spec);
    Rectangle r = rectangle(c);
    if (!c.done()) c.fail("trailing input after rectangle");
    return r;
}

RegionSet parse_region(const std::string& text, const GrowthSpec& spec) {
    Cursor c(text, spec);
    RegionSet r = region(c);
    if (!c.done()) c.fail("trailing input after region");
    return r;
}

SimpleFunction parse_simple_function(const std::string& text, const GrowthSpec& spec) {
    Cursor c(text, spec);
    SimpleFunction f = simple(c);
    if (!c.done()) c.fail("trailing input after simple function");
    return f;
}

Observable parse_observable(const std::string& text, const GrowthSpec& spec) {
    Cursor c(text, spec);
    Observable f = expr(c);
    if (!c.done()) c.fail("trailing input after expression");
    return f;
}

TowerPoint parse_point(const std::string& text, const GrowthSpec& spec) {
    auto at = text.find('@');
    if (at == std::string::npos || at == 0) {
        throw ParseError("point literal must look like bits@level: " + text);
    }
    LazyWord word = LazyWord::parse(text.substr(0, at), spec.cap_depth());
    BigInt level(text.substr(at + 1));
    BigInt h = height_of(word, spec);
    if (level < 1 || level > h) {
        throw ParseError("point level " + level.str() + " outside [1, " + h.str() + "]");
    }
    return TowerPoint{std::move(word), std::move(level)};
}

}  // namespace suspension
