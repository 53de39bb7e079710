#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swm {

/// What went wrong while reading FSW text.
enum class ParseErrorKind {
    MalformedFsw,         // syntax violation
    SymbolOutOfRange,     // base outside [0x100, 0x38b] or fill > 5
    CoordinateOutOfRange, // coordinate outside [250, 749]
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message);

    ParseErrorKind kind() const { return kind_; }
    /// Byte offset into the input where the violation was detected.
    std::size_t offset() const { return offset_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
};

inline constexpr int kMinBase = 0x100;
inline constexpr int kMaxBase = 0x38b;
inline constexpr int kMinCoord = 250;
inline constexpr int kMaxCoord = 749;

/// Identity of a SignWriting symbol, decomposed from its 6-character key
/// "S" + base (3 hex digits) + fill digit + rotation hex digit.
struct SymbolKey {
    int base = kMinBase; // glyph family, [0x100, 0x38b]
    int fill = 0;        // palm orientation / fill variant, [0, 5]
    int rotation = 0;    // [0, 15]; 8..15 is the mirrored plane

    friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
};

/// A symbol placed in sign space.
struct Symbol {
    SymbolKey key;
    int x = 500; // [250, 749]
    int y = 500;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

enum class Box : char { B = 'B', L = 'L', M = 'M', R = 'R' };

/// One sign: a box marker with its placement and a multiset of positioned
/// symbols (input order preserved). `sequence` holds the temporal "A" prefix
/// when present (empty otherwise); it round-trips but no metric reads it.
struct Sign {
    Box box = Box::M;
    int box_x = 500;
    int box_y = 500;
    std::vector<Symbol> symbols;
    std::vector<SymbolKey> sequence;

    friend bool operator==(const Sign&, const Sign&) = default;
};

enum class SymbolCategory {
    Hands,
    Movement,
    Dynamics,
    HeadFace,
    Body,
    Location,
    Punctuation,
};

std::string_view to_string(SymbolCategory category);

/// Parses a complete FSW string:
///   (A<symbolkey>+)? [BLMR]<coord> (<symbolkey><coord>)*
/// Hex digits are accepted in either case; structural letters are not.
/// Throws ParseError on any violation.
Sign parse_sign(std::string_view text);

/// Canonical (lowercase-hex) serialization. Inverse of parse_sign.
std::string serialize_sign(const Sign& sign);

/// Parses a 6-character symbol key such as "S14c2f".
SymbolKey parse_symbol_key(std::string_view text);

std::string serialize_symbol_key(const SymbolKey& key);

/// Category of the base shape, per the ISWA 2010 range table.
SymbolCategory category_of(const SymbolKey& key);

/// Token list for BLEU: the box marker with its coordinates, then one token
/// per symbol (key immediately followed by its coordinates). The temporal
/// prefix is not tokenized.
std::vector<std::string> tokenize_for_bleu(const Sign& sign);

} // namespace swm
