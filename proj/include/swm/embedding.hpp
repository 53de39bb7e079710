#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace swm {

/// A labelled vector, e.g. a CLIP image embedding of a rendered sign.
struct Embedding {
    std::string id;
    std::vector<double> values;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroVector : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised on unreadable or malformed embedding files.
class EmbeddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Embeddings loaded from a file of `id<TAB>v1,v2,...,vn` lines. All records
/// share one dimension; ids are unique.
class EmbeddingStore {
public:
    static EmbeddingStore load(const std::string& path);

    /// nullptr when the id is unknown.
    const Embedding* find(const std::string& id) const;
    /// Throws EmbeddingError when the id is unknown.
    const Embedding& at(const std::string& id) const;

    std::size_t size() const { return items_.size(); }
    std::size_t dimension() const { return dimension_; }

    void add(Embedding embedding); // throws on duplicate id or dimension clash

private:
    std::vector<Embedding> items_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t dimension_ = 0;
};

} // namespace swm
