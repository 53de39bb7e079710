#include "swm/embedding.hpp"

#include <cstdlib>
#include <fstream>

namespace swm {

namespace {

double parse_value(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || end != begin + text.size())
        throw EmbeddingError("embedding file line " + std::to_string(line_no) +
                             ": bad number '" + text + "'");
    return value;
}

} // namespace

void EmbeddingStore::add(Embedding embedding) {
    if (embedding.values.empty())
        throw EmbeddingError("embedding '" + embedding.id + "' has no values");
    if (items_.empty())
        dimension_ = embedding.values.size();
    else if (embedding.values.size() != dimension_)
        throw EmbeddingError("embedding '" + embedding.id + "' has dimension " +
                             std::to_string(embedding.values.size()) + ", expected " +
                             std::to_string(dimension_));
    auto [it, inserted] = index_.emplace(embedding.id, items_.size());
    (void)it;
    if (!inserted) throw EmbeddingError("duplicate embedding id '" + embedding.id + "'");
    items_.push_back(std::move(embedding));
}

EmbeddingStore EmbeddingStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EmbeddingError("cannot open embedding file: " + path);

    EmbeddingStore store;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw EmbeddingError("embedding file line " + std::to_string(line_no) +
                                 ": expected id<TAB>v1,v2,...");

        Embedding embedding;
        embedding.id = line.substr(0, tab);
        std::size_t start = tab + 1;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            std::size_t end = comma == std::string::npos ? line.size() : comma;
            embedding.values.push_back(parse_value(line.substr(start, end - start), line_no));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        try {
            store.add(std::move(embedding));
        } catch (const EmbeddingError& e) {
            throw EmbeddingError("embedding file line " + std::to_string(line_no) + ": " +
                                 e.what());
        }
    }
    return store;
}

const Embedding* EmbeddingStore::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &items_[it->second];
}

const Embedding& EmbeddingStore::at(const std::string& id) const {
    const Embedding* embedding = find(id);
    if (!embedding) throw EmbeddingError("no embedding for id '" + id + "'");
    return *embedding;
}

} // namespace swm
