#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/bias.hpp"

namespace ilp {

/// modeh/modeb scheme with recall and +type / -type arguments.
struct ModeDeclaration {
    enum class Kind : uint8_t { modeh, modeb };
    struct Arg {
        Direction direction;
        SymbolId type;
    };

    Kind kind;
    bool recall_star = true;  // `*`; bounded recall unused here
    SymbolId pred = 0;
    std::vector<Arg> args;

    size_t arity() const { return args.size(); }
};

inline std::string to_string(const ModeDeclaration& m) {
    std::string out = m.kind == ModeDeclaration::Kind::modeh ? "modeh(*, " : "modeb(*, ";
    out += symbol_name(m.pred);
    out += '(';
    for (size_t i = 0; i < m.args.size(); ++i) {
        if (i) out += ',';
        out += m.args[i].direction == Direction::in ? '+' : '-';
        out += symbol_name(m.args[i].type);
    }
    out += "))";
    return out;
}

/// One modeh per head declaration, one modeb per body declaration; every
/// declared predicate must carry type and direction declarations.
inline std::vector<ModeDeclaration> to_mode_declarations(const LanguageBias& L) {
    std::vector<ModeDeclaration> out;
    auto convert = [&](const PredicateKey& key, ModeDeclaration::Kind kind) {
        const auto* types = L.types_of(key.pred, key.arity);
        const auto* dirs = L.directions_of(key.pred, key.arity);
        if (!types)
            throw std::runtime_error("missing type declaration for " + symbol_name(key.pred) +
                                     "/" + std::to_string(key.arity));
        if (!dirs)
            throw std::runtime_error("missing direction declaration for " +
                                     symbol_name(key.pred) + "/" + std::to_string(key.arity));
        ModeDeclaration m;
        m.kind = kind;
        m.pred = key.pred;
        for (size_t i = 0; i < key.arity; ++i)
            m.args.push_back({(*dirs)[i], (*types)[i]});
        out.push_back(std::move(m));
    };
    for (const auto& d : L.head_decls) convert(d, ModeDeclaration::Kind::modeh);
    for (const auto& d : L.body_decls) convert(d, ModeDeclaration::Kind::modeb);
    return out;
}

}  // namespace ilp
