#pragma once

// Expressiveness rewrites between the until modalities, polarity analysis,
// separation into upward and downward parts, and the translation of strong
// untils into just-before untils.

#include "error.hpp"
#include "eval.hpp"
#include "formula.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bbdiv
{

enum class identity_id
{
    weak_tau_to_strong,     // f WU[tau] g  =  |{g, f SU[tau] g}
    strong_tau_to_weak,     // f SU[tau] g  =  &{f, f WU[tau] g}
    strong_visible_to_weak, // f SU[a] g  =  f WU[a] g           (a visible)
    just_before_to_strong,  // f JU[a] g  =  tt SU[tau] (f SU[a] g)
    div_to_sdiv             // DIV f  =  tt JU[tau] (SDIV f)
};

inline constexpr std::array all_identities{ identity_id::weak_tau_to_strong, identity_id::strong_tau_to_weak,
                                            identity_id::strong_visible_to_weak,
                                            identity_id::just_before_to_strong, identity_id::div_to_sdiv };

inline bool identity_applies( const formula& f, identity_id which )
{
    bool silent = f->label() == tau_name;
    switch ( which )
    {
    case identity_id::weak_tau_to_strong: return f->kind() == formula_kind::weak_until && silent;
    case identity_id::strong_tau_to_weak: return f->kind() == formula_kind::strong_until && silent;
    case identity_id::strong_visible_to_weak: return f->kind() == formula_kind::strong_until && !silent;
    case identity_id::just_before_to_strong: return f->kind() == formula_kind::just_before;
    case identity_id::div_to_sdiv: return f->kind() == formula_kind::div;
    }
    return false;
}

// Rewrites the root of f by one identity.
inline formula expand_identity( const formula& f, identity_id which )
{
    if ( !identity_applies( f, which ) )
        throw precondition_error( "identity does not match " + to_string( f ) );
    switch ( which )
    {
    case identity_id::weak_tau_to_strong:
        return disj( { f->right(), strong_until( f->left(), tau_name, f->right() ) } );
    case identity_id::strong_tau_to_weak:
        return conj( { f->left(), weak_until( f->left(), tau_name, f->right() ) } );
    case identity_id::strong_visible_to_weak: return weak_until( f->left(), f->label(), f->right() );
    case identity_id::just_before_to_strong:
        return strong_until( tt(), tau_name, strong_until( f->left(), f->label(), f->right() ) );
    case identity_id::div_to_sdiv: return just_before( tt(), tau_name, sdiv( f->operand() ) );
    }
    return f;
}

enum class polarity
{
    upward,   // preserved along silent steps
    downward, // preserved against silent steps
    both,
    unknown
};

inline constexpr std::string_view polarity_name( polarity p )
{
    switch ( p )
    {
    case polarity::upward: return "upward";
    case polarity::downward: return "downward";
    case polarity::both: return "both";
    case polarity::unknown: return "unknown";
    }
    return "?";
}

inline polarity classify_polarity( const formula& f )
{
    switch ( f->kind() )
    {
    case formula_kind::just_before:
    case formula_kind::div: return polarity::downward;
    case formula_kind::neg:
        switch ( classify_polarity( f->operand() ) )
        {
        case polarity::upward: return polarity::downward;
        case polarity::downward: return polarity::upward;
        case polarity::both: return polarity::both;
        default: return polarity::unknown;
        }
    case formula_kind::conj:
    case formula_kind::disj: {
        bool up = true;
        bool down = true;
        for ( const auto& g : f->operands() )
        {
            auto p = classify_polarity( g );
            up = up && ( p == polarity::upward || p == polarity::both );
            down = down && ( p == polarity::downward || p == polarity::both );
        }
        if ( up && down )
            return polarity::both;
        if ( up )
            return polarity::upward;
        if ( down )
            return polarity::downward;
        return polarity::unknown;
    }
    default: return polarity::unknown;
    }
}

namespace detail
{

// A conjunction of literals over downward atoms (JU and DIV roots).
struct clause
{
    std::vector<formula> positive;
    std::vector<formula> negative;
};

inline void normalise_clause( clause& c )
{
    for ( auto* side : { &c.positive, &c.negative } )
    {
        std::sort( side->begin(), side->end(), formula_less{} );
        side->erase( std::unique( side->begin(), side->end() ), side->end() );
    }
}

inline bool contradictory( const clause& c )
{
    for ( const auto& p : c.positive )
        if ( std::binary_search( c.negative.begin(), c.negative.end(), p, formula_less{} ) )
            return true;
    return false;
}

inline std::vector<clause> dnf( const formula& f, bool negated )
{
    switch ( f->kind() )
    {
    case formula_kind::neg: return dnf( f->operand(), !negated );
    case formula_kind::conj:
    case formula_kind::disj: {
        // A conjunction, or a negated disjunction, multiplies out.
        bool product = ( f->kind() == formula_kind::conj ) != negated;
        if ( !product )
        {
            std::vector<clause> out;
            for ( const auto& g : f->operands() )
                for ( auto& c : dnf( g, negated ) )
                    out.push_back( std::move( c ) );
            return out;
        }
        std::vector<clause> out{ clause{} };
        for ( const auto& g : f->operands() )
        {
            auto part = dnf( g, negated );
            std::vector<clause> next;
            for ( const auto& a : out )
                for ( const auto& b : part )
                {
                    clause c = a;
                    c.positive.insert( c.positive.end(), b.positive.begin(), b.positive.end() );
                    c.negative.insert( c.negative.end(), b.negative.begin(), b.negative.end() );
                    normalise_clause( c );
                    if ( !contradictory( c ) )
                        next.push_back( std::move( c ) );
                }
            out = std::move( next );
        }
        return out;
    }
    case formula_kind::just_before:
    case formula_kind::div: {
        clause c;
        ( negated ? c.negative : c.positive ).push_back( f );
        return { c };
    }
    default: throw precondition_error( "separation needs a formula built from negation, lists, JU and DIV" );
    }
}

} // namespace detail

// A disjunction of conjunctions &{u, d} with u upward and d downward,
// equivalent to f.
inline formula separate( const formula& f )
{
    std::vector<formula> disjuncts;
    for ( auto& c : detail::dnf( f, false ) )
    {
        std::vector<formula> negated;
        for ( const auto& atom : c.negative )
            negated.push_back( neg( atom ) );
        auto up = conj_or_single( std::move( negated ) );
        auto down = conj_or_single( std::move( c.positive ) );
        disjuncts.push_back( conj( { up, down } ) );
    }
    return disj( std::move( disjuncts ) );
}

// The two halves of one disjunct produced by separate().
inline std::pair<formula, formula> split_disjunct( const formula& d )
{
    const auto& parts = d->operands();
    if ( parts.size() == 1 )
        return { parts[ 0 ], parts[ 0 ] };
    if ( classify_polarity( parts[ 0 ] ) == polarity::downward )
        return { parts[ 1 ], parts[ 0 ] };
    return { parts[ 0 ], parts[ 1 ] };
}

namespace detail
{

inline constexpr std::size_t max_translated_disjuncts = 20;

class until_translator
{
    std::unordered_map<const formula_node*, std::pair<formula, formula>> _memo;

    // (|{u_i & d_i | i in mask}) SU[a] chi, assuming the u_i upward and d_i
    // downward: some disjunct i holds at the start and keeps its upward half
    // until either the a-step or a silent step after which the remaining
    // disjuncts take over.
    formula strong( const std::vector<std::pair<formula, formula>>& parts, std::string_view a, const formula& chi )
    {
        std::vector<formula> by_mask( std::size_t{ 1 } << parts.size() );
        by_mask[ 0 ] = ff();
        for ( std::size_t mask = 1; mask < by_mask.size(); ++mask )
        {
            std::vector<formula> options;
            for ( std::size_t i = 0; i < parts.size(); ++i )
            {
                if ( !( ( mask >> i ) & 1U ) )
                    continue;
                const auto& [ up, down ] = parts[ i ];
                auto rest = by_mask[ mask & ~( std::size_t{ 1 } << i ) ];
                options.push_back(
                        conj( { up, disj( { just_before( down, a, chi ), just_before( down, tau_name, rest ) } ) } ) );
            }
            by_mask[ mask ] = disj( std::move( options ) );
        }
        return by_mask.back();
    }

public:
    formula run( const formula& f )
    {
        if ( auto it = _memo.find( f.get() ); it != _memo.end() )
            return it->second.second;
        formula out;
        switch ( f->kind() )
        {
        case formula_kind::sdiv:
            throw precondition_error( "SDIV has no counterpart in the just-before logic" );
        case formula_kind::weak_until:
            out = run( f->label() == tau_name ? expand_identity( f, identity_id::weak_tau_to_strong )
                                              : strong_until( f->left(), f->label(), f->right() ) );
            break;
        case formula_kind::strong_until: {
            auto chi = run( f->right() );
            auto separated = separate( run( f->left() ) );
            if ( separated->operands().size() > max_translated_disjuncts )
                throw precondition_error( "left operand separates into too many disjuncts" );
            std::vector<std::pair<formula, formula>> parts;
            for ( const auto& d : separated->operands() )
                parts.push_back( split_disjunct( d ) );
            out = strong( parts, f->label(), chi );
            break;
        }
        default: {
            std::vector<formula> operands;
            for ( const auto& g : f->operands() )
                operands.push_back( run( g ) );
            out = rebuild( f, std::move( operands ) );
        }
        }
        _memo.emplace( f.get(), std::pair{ f, out } );
        return out;
    }
};

} // namespace detail

// An equivalent formula without SU and WU.
inline formula translate_until_to_jb( const formula& f )
{
    return detail::until_translator{}.run( f );
}

} // namespace bbdiv
