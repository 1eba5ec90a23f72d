#pragma once

// Checkers for the transfer condition T and the divergence conditions
// D, D0, D1, D2, D3, D4, GKPP and INT on an arbitrary (not necessarily
// symmetric) relation.
//
// With B(t) = { u | u R t } and Z the set of states related to some target
// state t', the conditions that only ask for *some* state of a divergence to
// be related reduce to "s has no divergence avoiding Z", which is decided in
// linear time (D1, D2, D4, GKPP, INT). D, D0 and D3 depend on the exact set of
// states a divergence visits and go through lasso enumeration.

#include "error.hpp"
#include "lasso.hpp"
#include "lts.hpp"
#include "relation.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bbdiv
{

enum class condition_id
{
    T,
    D,
    D0,
    D1,
    D2,
    D3,
    D4,
    GKPP,
    INT
};

inline constexpr std::array all_conditions{ condition_id::T,  condition_id::D,  condition_id::D0,
                                            condition_id::D1, condition_id::D2, condition_id::D3,
                                            condition_id::D4, condition_id::GKPP, condition_id::INT };

inline constexpr std::string_view condition_name( condition_id c )
{
    switch ( c )
    {
    case condition_id::T: return "T";
    case condition_id::D: return "D";
    case condition_id::D0: return "D0";
    case condition_id::D1: return "D1";
    case condition_id::D2: return "D2";
    case condition_id::D3: return "D3";
    case condition_id::D4: return "D4";
    case condition_id::GKPP: return "GKPP";
    case condition_id::INT: return "INT";
    }
    return "?";
}

// Whether the checker enumerates divergences exhaustively.
inline constexpr bool needs_lasso_bound( condition_id c )
{
    return c == condition_id::D || c == condition_id::D0 || c == condition_id::D3;
}

struct step
{
    label_t label;
    state_t target;
};

struct counterexample
{
    state_t s;
    state_t t;
    std::optional<step> move;        // T
    std::optional<lasso> divergence; // divergence conditions
    std::string obligation;
};

struct condition_verdict
{
    condition_id id;
    bool holds;
    std::optional<counterexample> failure;
};

struct condition_report
{
    std::vector<condition_verdict> verdicts;

    [[nodiscard]] bool all_hold() const
    {
        for ( const auto& v : verdicts )
            if ( !v.holds )
                return false;
        return true;
    }

    [[nodiscard]] const condition_verdict* find( condition_id c ) const
    {
        for ( const auto& v : verdicts )
            if ( v.id == c )
                return &v;
        return nullptr;
    }
};

struct check_options
{
    std::size_t lasso_bound = default_lasso_bound;
    // When set, only pairs (s, t) with s in this set are examined.
    std::optional<state_set> sources;
};

namespace detail
{

inline lasso lasso_of_walk( const lts& l, std::vector<state_t> walk )
{
    lasso out{ std::move( walk ), l.empty_set(), l.empty_set() };
    for ( std::size_t i = 0; i < out.walk.size(); ++i )
    {
        out.full_set.insert( out.walk[ i ] );
        if ( i > 0 )
            out.tail_set.insert( out.walk[ i ] );
    }
    return out;
}

inline std::string format_set( const state_set& x )
{
    std::ostringstream out;
    out << '{';
    bool first = true;
    x.for_each( [ & ]( state_t s ) {
        out << ( first ? "" : "," ) << s;
        first = false;
    } );
    out << '}';
    return out.str();
}

// Premise domain of the divergence conditions: relativised ones only look at
// divergences of s that stay inside B(t).
inline state_set premise_domain( const lts& l, const relation& r, condition_id c, state_t t )
{
    switch ( c )
    {
    case condition_id::D2:
    case condition_id::D3:
    case condition_id::INT: return l.all_states();
    default: return r.preimage( t );
    }
}

// The silent targets the conclusion may use: direct successors or ->+.
inline state_set conclusion_targets( const lts& l, condition_id c, state_t t )
{
    if ( c == condition_id::D4 || c == condition_id::INT )
        return tau_plus( l, t );
    return successors( l, t, lts::tau );
}

// Does the conclusion hold for one divergence, given by its visited sets?
inline bool divergence_matched( const lts& l, const relation& r, condition_id c, state_t t, const lasso& d )
{
    switch ( c )
    {
    case condition_id::D:
    case condition_id::D0: {
        bool found = false;
        successors( l, t, lts::tau ).for_each( [ & ]( state_t tp ) {
            found = found || d.full_set.subset_of( r.preimage( tp ) );
        } );
        return found;
    }
    case condition_id::D3: return has_divergence_within( l, t, r.image( d.full_set ) );
    case condition_id::GKPP: return d.tail_set.intersects( r.preimage( conclusion_targets( l, c, t ) ) );
    default: return d.full_set.intersects( r.preimage( conclusion_targets( l, c, t ) ) );
    }
}

inline std::string obligation_text( condition_id c, state_t t )
{
    auto ts = std::to_string( t );
    switch ( c )
    {
    case condition_id::D:
    case condition_id::D0: return "no tau-successor of " + ts + " is related to every state of the divergence";
    case condition_id::D3: return ts + " has no divergence through states related to the divergence";
    case condition_id::D4:
    case condition_id::INT: return "no state reachable by ->+ from " + ts + " is related to a state of the divergence";
    case condition_id::GKPP:
        return "no tau-successor of " + ts + " is related to a state of the divergence after position 0";
    default: return "no tau-successor of " + ts + " is related to a state of the divergence";
    }
}

inline std::optional<counterexample> check_transfer( const lts& l, const relation& r, const check_options& opt )
{
    std::vector<std::optional<state_set>> closure( l.state_count() );
    for ( auto [ s, t ] : r.pairs() )
    {
        if ( opt.sources && !opt.sources->contains( s ) )
            continue;
        if ( !closure[ t ] )
            closure[ t ] = tau_closure( l, t );
        auto candidates = *closure[ t ] & r.image( s );
        for ( const auto& tr : l.out( s ) )
        {
            bool matched = false;
            const auto& targets = r.image( tr.dst );
            candidates.for_each( [ & ]( state_t mid ) {
                matched = matched || opt_step( l, mid, tr.label ).intersects( targets );
            } );
            if ( !matched )
                return counterexample{ s, t, step{ tr.label, tr.dst }, std::nullopt,
                                       "no t'' with " + std::to_string( t ) + " => t'' -(" +
                                               l.label_name( tr.label ) + ")-> t' matching the move" };
        }
    }
    return std::nullopt;
}

inline std::optional<counterexample> check_by_avoidance( const lts& l, const relation& r, condition_id c,
                                                         const check_options& opt )
{
    for ( auto [ s, t ] : r.pairs() )
    {
        if ( opt.sources && !opt.sources->contains( s ) )
            continue;
        auto domain = premise_domain( l, r, c, t );
        auto avoid = domain - r.preimage( conclusion_targets( l, c, t ) );
        std::vector<state_t> walk;
        if ( c == condition_id::GKPP )
        {
            // Position 0 is exempt: s may itself be related.
            auto alive = divergent_within( l, avoid );
            for ( auto next : l.tau_out( s ) )
                if ( alive.contains( next ) )
                {
                    walk = divergence_walk( l, next, avoid );
                    walk.insert( walk.begin(), s );
                    break;
                }
        }
        else
        {
            walk = divergence_walk( l, s, avoid );
        }
        if ( !walk.empty() )
            return counterexample{ s, t, std::nullopt, lasso_of_walk( l, std::move( walk ) ),
                                   obligation_text( c, t ) };
    }
    return std::nullopt;
}

inline std::optional<counterexample> check_by_enumeration( const lts& l, const relation& r, condition_id c,
                                                           const check_options& opt )
{
    require_lasso_bound( l, opt.lasso_bound );
    for ( auto [ s, t ] : r.pairs() )
    {
        if ( opt.sources && !opt.sources->contains( s ) )
            continue;
        for ( auto& d : enumerate_lassos( l, s, premise_domain( l, r, c, t ), opt.lasso_bound ) )
            if ( !divergence_matched( l, r, c, t, d ) )
                return counterexample{ s, t, std::nullopt, std::move( d ), obligation_text( c, t ) };
    }
    return std::nullopt;
}

} // namespace detail

inline condition_verdict check_condition( const lts& l, const relation& r, condition_id c,
                                          const check_options& opt = {} )
{
    if ( r.universe() != l.state_count() )
        throw precondition_error( "relation and system have different state counts" );
    std::optional<counterexample> failure;
    if ( c == condition_id::T )
        failure = detail::check_transfer( l, r, opt );
    else if ( needs_lasso_bound( c ) )
        failure = detail::check_by_enumeration( l, r, c, opt );
    else
        failure = detail::check_by_avoidance( l, r, c, opt );
    return { c, !failure.has_value(), std::move( failure ) };
}

inline condition_report check_conditions( const lts& l, const relation& r, std::span<const condition_id> which,
                                          const check_options& opt = {} )
{
    condition_report report;
    for ( auto c : which )
        report.verdicts.push_back( check_condition( l, r, c, opt ) );
    return report;
}

// Re-validates a counterexample from first principles: the pair is related,
// the move or divergence exists in the system, and nothing matches it.
inline bool replay_counterexample( const lts& l, const relation& r, condition_id c, const counterexample& cex )
{
    if ( cex.s >= l.state_count() || cex.t >= l.state_count() || !r.contains( cex.s, cex.t ) )
        return false;
    if ( c == condition_id::T )
    {
        if ( !cex.move || !successors( l, cex.s, cex.move->label ).contains( cex.move->target ) )
            return false;
        bool matched = false;
        tau_closure( l, cex.t ).for_each( [ & ]( state_t mid ) {
            if ( !r.contains( cex.s, mid ) )
                return;
            opt_step( l, mid, cex.move->label ).for_each( [ & ]( state_t tp ) {
                matched = matched || r.contains( cex.move->target, tp );
            } );
        } );
        return !matched;
    }
    if ( !cex.divergence )
        return false;
    if ( !is_valid_lasso( l, cex.s, detail::premise_domain( l, r, c, cex.t ), *cex.divergence ) )
        return false;
    return !detail::divergence_matched( l, r, c, cex.t, *cex.divergence );
}

// The implications that hold between the conditions on any fixed relation.
inline constexpr std::array<std::pair<condition_id, condition_id>, 11> condition_implications{ {
        { condition_id::D, condition_id::D0 },
        { condition_id::D0, condition_id::D },
        { condition_id::D2, condition_id::D3 },
        { condition_id::D3, condition_id::D2 },
        { condition_id::D, condition_id::D1 },
        { condition_id::D, condition_id::GKPP },
        { condition_id::GKPP, condition_id::D4 },
        { condition_id::D2, condition_id::D1 },
        { condition_id::D1, condition_id::D4 },
        { condition_id::D3, condition_id::INT },
        { condition_id::INT, condition_id::D4 },
} };

// Implications from condition_implications contradicted by a report.
inline std::vector<std::pair<condition_id, condition_id>> lattice_violations( const condition_report& report )
{
    std::vector<std::pair<condition_id, condition_id>> out;
    for ( auto [ from, to ] : condition_implications )
    {
        const auto* a = report.find( from );
        const auto* b = report.find( to );
        if ( a && b && a->holds && !b->holds )
            out.emplace_back( from, to );
    }
    return out;
}

inline std::string format_counterexample( const lts& l, const counterexample& cex )
{
    std::ostringstream out;
    out << "pair (" << cex.s << ',' << cex.t << ")";
    if ( cex.move )
        out << ", move " << cex.s << " -" << l.label_name( cex.move->label ) << "-> " << cex.move->target;
    if ( cex.divergence )
    {
        out << ", divergence";
        for ( auto x : cex.divergence->walk )
            out << ' ' << x;
        out << " visiting " << detail::format_set( cex.divergence->full_set );
    }
    out << ": " << cex.obligation;
    return out.str();
}

} // namespace bbdiv
