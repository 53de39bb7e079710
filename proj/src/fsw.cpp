#include "swm/fsw.hpp"

#include <array>
#include <cassert>

namespace swm {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

bool is_box_marker(char c) {
    return c == 'B' || c == 'L' || c == 'M' || c == 'R';
}

struct CategoryRange {
    int first;
    int last;
    SymbolCategory category;
};

// ISWA 2010 base-shape ranges. Kept as one table so a correction is a data
// edit, not a logic change.
constexpr std::array<CategoryRange, 7> kCategoryTable{{
    {0x100, 0x204, SymbolCategory::Hands},
    {0x205, 0x2f6, SymbolCategory::Movement},
    {0x2f7, 0x2fe, SymbolCategory::Dynamics},
    {0x2ff, 0x36c, SymbolCategory::HeadFace},
    {0x36d, 0x37e, SymbolCategory::Body},
    {0x37f, 0x386, SymbolCategory::Location},
    {0x387, 0x38b, SymbolCategory::Punctuation},
}};

[[noreturn]] void fail(ParseErrorKind kind, std::size_t offset, const std::string& message) {
    throw ParseError(kind, offset, message + " at offset " + std::to_string(offset));
}

// Pulls one character class out of `text` at `pos`, advancing `pos`.
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char take() { return text_[pos_++]; }

    int take_hex(const char* what) {
        if (done()) fail(ParseErrorKind::MalformedFsw, pos_, std::string("truncated ") + what);
        int v = hex_value(peek());
        if (v < 0) fail(ParseErrorKind::MalformedFsw, pos_, std::string("expected hex digit in ") + what);
        ++pos_;
        return v;
    }

    int take_decimal_digit(const char* what) {
        if (done()) fail(ParseErrorKind::MalformedFsw, pos_, std::string("truncated ") + what);
        char c = peek();
        if (c < '0' || c > '9') fail(ParseErrorKind::MalformedFsw, pos_, std::string("expected digit in ") + what);
        ++pos_;
        return c - '0';
    }

    SymbolKey take_symbol_key() {
        std::size_t start = pos_;
        if (done() || peek() != 'S')
            fail(ParseErrorKind::MalformedFsw, pos_, "expected symbol key");
        ++pos_;
        int base = 0;
        for (int i = 0; i < 3; ++i) base = base * 16 + take_hex("symbol base");
        if (base < kMinBase || base > kMaxBase)
            fail(ParseErrorKind::SymbolOutOfRange, start + 1, "symbol base outside S100..S38b");
        std::size_t fill_pos = pos_;
        int fill = take_hex("symbol fill");
        if (fill > 5)
            fail(ParseErrorKind::SymbolOutOfRange, fill_pos, "symbol fill above 5");
        int rotation = take_hex("symbol rotation");
        return SymbolKey{base, fill, rotation};
    }

    int take_coordinate_part(const char* what) {
        std::size_t start = pos_;
        int v = 0;
        for (int i = 0; i < 3; ++i) v = v * 10 + take_decimal_digit(what);
        if (v < kMinCoord || v > kMaxCoord)
            fail(ParseErrorKind::CoordinateOutOfRange, start, "coordinate outside 250..749");
        return v;
    }

    std::pair<int, int> take_coordinate() {
        int x = take_coordinate_part("x coordinate");
        if (done() || peek() != 'x')
            fail(ParseErrorKind::MalformedFsw, pos_, "expected 'x' between coordinates");
        ++pos_;
        int y = take_coordinate_part("y coordinate");
        return {x, y};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

void append_base_hex(std::string& out, int base) {
    out.push_back(kHexDigits[(base >> 8) & 0xf]);
    out.push_back(kHexDigits[(base >> 4) & 0xf]);
    out.push_back(kHexDigits[base & 0xf]);
}

void append_coordinate(std::string& out, int x, int y) {
    auto put = [&out](int v) {
        out.push_back(static_cast<char>('0' + v / 100));
        out.push_back(static_cast<char>('0' + (v / 10) % 10));
        out.push_back(static_cast<char>('0' + v % 10));
    };
    put(x);
    out.push_back('x');
    put(y);
}

} // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(message), kind_(kind), offset_(offset) {}

std::string_view to_string(SymbolCategory category) {
    switch (category) {
        case SymbolCategory::Hands: return "hands";
        case SymbolCategory::Movement: return "movement";
        case SymbolCategory::Dynamics: return "dynamics";
        case SymbolCategory::HeadFace: return "head-face";
        case SymbolCategory::Body: return "body";
        case SymbolCategory::Location: return "location";
        case SymbolCategory::Punctuation: return "punctuation";
    }
    return "?";
}

Sign parse_sign(std::string_view text) {
    Reader reader(text);
    if (reader.done())
        fail(ParseErrorKind::MalformedFsw, 0, "empty FSW string");

    Sign sign;
    if (reader.peek() == 'A') {
        reader.take();
        if (reader.done() || reader.peek() != 'S')
            fail(ParseErrorKind::MalformedFsw, reader.pos(), "expected symbol key after 'A'");
        while (!reader.done() && reader.peek() == 'S') {
            // A box marker can't follow 'S', so every 'S' here starts a key.
            sign.sequence.push_back(reader.take_symbol_key());
        }
    }

    if (reader.done() || !is_box_marker(reader.peek()))
        fail(ParseErrorKind::MalformedFsw, reader.pos(), "expected box marker (B, L, M, or R)");
    sign.box = static_cast<Box>(reader.take());
    auto [bx, by] = reader.take_coordinate();
    sign.box_x = bx;
    sign.box_y = by;

    while (!reader.done()) {
        Symbol symbol;
        symbol.key = reader.take_symbol_key();
        auto [x, y] = reader.take_coordinate();
        symbol.x = x;
        symbol.y = y;
        sign.symbols.push_back(symbol);
    }
    return sign;
}

std::string serialize_sign(const Sign& sign) {
    std::string out;
    out.reserve(8 + sign.sequence.size() * 6 + sign.symbols.size() * 13 + 1);
    if (!sign.sequence.empty()) {
        out.push_back('A');
        for (const SymbolKey& key : sign.sequence) out += serialize_symbol_key(key);
    }
    out.push_back(static_cast<char>(sign.box));
    append_coordinate(out, sign.box_x, sign.box_y);
    for (const Symbol& symbol : sign.symbols) {
        out += serialize_symbol_key(symbol.key);
        append_coordinate(out, symbol.x, symbol.y);
    }
    return out;
}

SymbolKey parse_symbol_key(std::string_view text) {
    Reader reader(text);
    if (reader.done() || reader.peek() != 'S')
        fail(ParseErrorKind::MalformedFsw, 0, "expected symbol key");
    SymbolKey key = reader.take_symbol_key();
    if (!reader.done())
        fail(ParseErrorKind::MalformedFsw, reader.pos(), "trailing characters after symbol key");
    return key;
}

std::string serialize_symbol_key(const SymbolKey& key) {
    std::string out;
    out.reserve(6);
    out.push_back('S');
    append_base_hex(out, key.base);
    out.push_back(static_cast<char>('0' + key.fill));
    out.push_back(kHexDigits[key.rotation & 0xf]);
    return out;
}

SymbolCategory category_of(const SymbolKey& key) {
    for (const CategoryRange& range : kCategoryTable) {
        if (key.base >= range.first && key.base <= range.last) return range.category;
    }
    // Unreachable for keys holding the SymbolKey invariant.
    assert(false && "base outside the ISWA range");
    return SymbolCategory::Punctuation;
}

std::vector<std::string> tokenize_for_bleu(const Sign& sign) {
    std::vector<std::string> tokens;
    tokens.reserve(1 + sign.symbols.size());
    std::string box;
    box.push_back(static_cast<char>(sign.box));
    append_coordinate(box, sign.box_x, sign.box_y);
    tokens.push_back(std::move(box));
    for (const Symbol& symbol : sign.symbols) {
        std::string token = serialize_symbol_key(symbol.key);
        append_coordinate(token, symbol.x, symbol.y);
        tokens.push_back(std::move(token));
    }
    return tokens;
}

} // namespace swm
