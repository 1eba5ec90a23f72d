#pragma once

// Bottom-up evaluation: every subformula is mapped to the set of states
// satisfying it. Untils are backward silent searches, the divergence
// modalities greatest fixpoints.

#include "formula.hpp"
#include "lts.hpp"
#include "state_set.hpp"

#include <string_view>
#include <unordered_map>
#include <utility>

namespace bbdiv
{

enum class logic_id
{
    JB,      // negation, conjunction, JU
    JB_DIV,  // JB with DIV
    U_DIV,   // negation, conjunction, SU and WU, DIV
    JB_SDIV  // JB with SDIV
};

inline constexpr std::string_view logic_name( logic_id id )
{
    switch ( id )
    {
    case logic_id::JB: return "JB";
    case logic_id::JB_DIV: return "JB_DIV";
    case logic_id::U_DIV: return "U_DIV";
    case logic_id::JB_SDIV: return "JB_SDIV";
    }
    return "?";
}

// Disjunction counts as the usual abbreviation and is allowed everywhere.
inline bool in_logic( const formula& f, logic_id id )
{
    bool allowed = false;
    switch ( f->kind() )
    {
    case formula_kind::neg:
    case formula_kind::conj:
    case formula_kind::disj: allowed = true; break;
    case formula_kind::just_before: allowed = id != logic_id::U_DIV; break;
    case formula_kind::weak_until:
    case formula_kind::strong_until: allowed = id == logic_id::U_DIV; break;
    case formula_kind::div: allowed = id == logic_id::JB_DIV || id == logic_id::U_DIV; break;
    case formula_kind::sdiv: allowed = id == logic_id::JB_SDIV; break;
    }
    if ( !allowed )
        return false;
    for ( const auto& g : f->operands() )
        if ( !in_logic( g, id ) )
            return false;
    return true;
}

// Caches denotations per node for one system.
class evaluator
{
    const lts* _lts;
    std::unordered_map<const formula_node*, std::pair<formula, state_set>> _cache;

    // States with an a-step (optional when silent) into `into`.
    state_set can_step( std::string_view label, const state_set& into, bool optional ) const
    {
        const auto& l = *_lts;
        auto out = l.empty_set();
        auto a = l.find_label( label );
        if ( !a )
            return out;
        for ( const auto& tr : l.transitions() )
            if ( tr.label == *a && into.contains( tr.dst ) )
                out.insert( tr.src );
        if ( optional && *a == lts::tau )
            out |= into;
        return out;
    }

    state_set compute( const formula& f )
    {
        const auto& l = *_lts;
        switch ( f->kind() )
        {
        case formula_kind::neg: return denote( f->operand() ).complement();
        case formula_kind::conj: {
            auto out = l.all_states();
            for ( const auto& g : f->operands() )
                out &= denote( g );
            return out;
        }
        case formula_kind::disj: {
            auto out = l.empty_set();
            for ( const auto& g : f->operands() )
                out |= denote( g );
            return out;
        }
        case formula_kind::just_before: {
            auto phi = denote( f->left() );
            auto seeds = phi & can_step( f->label(), denote( f->right() ), true );
            return tau_reach_backward( l, seeds, l.all_states() );
        }
        case formula_kind::weak_until: {
            auto phi = denote( f->left() );
            const auto& psi = denote( f->right() );
            auto out = tau_reach_backward( l, phi & can_step( f->label(), psi, false ), phi );
            if ( l.find_label( f->label() ) == lts::tau )
                out |= psi;
            return out;
        }
        case formula_kind::strong_until: {
            auto phi = denote( f->left() );
            auto seeds = phi & can_step( f->label(), denote( f->right() ), true );
            return tau_reach_backward( l, seeds, phi );
        }
        case formula_kind::sdiv: return divergent_within( l, denote( f->operand() ) );
        case formula_kind::div:
            return tau_reach_backward( l, divergent_within( l, denote( f->operand() ) ), l.all_states() );
        }
        return l.empty_set();
    }

public:
    explicit evaluator( const lts& l ) : _lts{ &l } {}

    const state_set& denote( const formula& f )
    {
        if ( auto it = _cache.find( f.get() ); it != _cache.end() )
            return it->second.second;
        auto value = compute( f );
        return _cache.insert_or_assign( f.get(), std::pair{ f, std::move( value ) } ).first->second.second;
    }

    bool holds( state_t s, const formula& f ) { return denote( f ).contains( s ); }
};

inline state_set denotation( const lts& l, const formula& f ) { return evaluator( l ).denote( f ); }

inline bool eval( const lts& l, state_t s, const formula& f )
{
    if ( s >= l.state_count() )
        throw precondition_error( "state " + std::to_string( s ) + " out of range" );
    return evaluator( l ).holds( s, f );
}

inline bool semantically_equivalent_on( const lts& l, const formula& f, const formula& g )
{
    evaluator e( l );
    return e.denote( f ) == e.denote( g );
}

} // namespace bbdiv
