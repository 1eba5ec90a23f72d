#pragma once

// Colourings, coloured traces and signature-based partition refinement.
//
// A colouring is a partition of the states. The signature of s collects the
// coloured traces of the form  colour(s) a D  of s: an a-step into colour D
// taken after silent steps that stay inside colour(s), where silent steps
// into colour(s) itself are contracted away. Refinement splits every block by
// signature until stable.

#include "lts.hpp"
#include "partition.hpp"
#include "state_set.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace bbdiv
{

using step_pair = std::pair<label_t, block_t>;

struct signature
{
    std::vector<step_pair> steps; // sorted, unique
    bool divergent = false;       // C-divergent under the partition

    friend auto operator<=>( const signature&, const signature& ) = default;
};

struct coloured_trace
{
    std::vector<block_t> colours;  // one more than actions
    std::vector<label_t> actions;

    friend auto operator<=>( const coloured_trace&, const coloured_trace& ) = default;
};

inline coloured_trace coloured_trace_of_path( const partition& p, const path& route )
{
    coloured_trace out;
    out.colours.push_back( p.block_of( route.states.front() ) );
    for ( std::size_t k = 0; k < route.actions.size(); ++k )
    {
        auto colour = p.block_of( route.states[ k + 1 ] );
        if ( route.actions[ k ] == lts::tau && colour == out.colours.back() )
            continue;
        out.actions.push_back( route.actions[ k ] );
        out.colours.push_back( colour );
    }
    return out;
}

// An infinite silent path from s that never leaves its own block.
inline bool is_c_divergent( const lts& l, const partition& p, state_t s )
{
    return has_divergence_within( l, s, p.members( p.block_of( s ) ) );
}

// Direct evaluation for one state.
inline signature signature_of( const lts& l, const partition& p, state_t s )
{
    auto block = p.block_of( s );
    auto members = p.members( block );
    signature out;
    tau_reach_forward( l, state_set( l.state_count(), { s } ), members ).for_each( [ & ]( state_t mid ) {
        for ( const auto& tr : l.out( mid ) )
            if ( tr.label != lts::tau || p.block_of( tr.dst ) != block )
                out.steps.emplace_back( tr.label, p.block_of( tr.dst ) );
    } );
    std::sort( out.steps.begin(), out.steps.end() );
    out.steps.erase( std::unique( out.steps.begin(), out.steps.end() ), out.steps.end() );
    out.divergent = has_divergence_within( l, s, members );
    return out;
}

namespace detail
{

inline void merge_into( std::vector<step_pair>& target, const std::vector<step_pair>& source )
{
    if ( source.empty() )
        return;
    std::vector<step_pair> merged;
    merged.reserve( target.size() + source.size() );
    std::set_union( target.begin(), target.end(), source.begin(), source.end(), std::back_inserter( merged ) );
    target = std::move( merged );
}

// Strongly connected components of the inert silent graph (silent steps
// inside a block), in reverse topological order.
inline std::vector<std::vector<state_t>> inert_components( const lts& l, const partition& p )
{
    const auto n = l.state_count();
    constexpr auto unvisited = static_cast<std::size_t>( -1 );
    std::vector<std::size_t> index( n, unvisited ), low( n, 0 );
    std::vector<char> on_stack( n, 0 );
    std::vector<state_t> stack;
    std::vector<std::vector<state_t>> components;
    std::size_t counter = 0;

    struct frame
    {
        state_t s;
        std::size_t next;
    };
    std::vector<frame> calls;
    for ( state_t root = 0; root < n; ++root )
    {
        if ( index[ root ] != unvisited )
            continue;
        calls.push_back( { root, 0 } );
        index[ root ] = low[ root ] = counter++;
        stack.push_back( root );
        on_stack[ root ] = 1;
        while ( !calls.empty() )
        {
            auto& f = calls.back();
            auto succ = l.tau_out( f.s );
            if ( f.next < succ.size() )
            {
                auto v = succ[ f.next++ ];
                if ( !p.same_block( f.s, v ) )
                    continue;
                if ( index[ v ] == unvisited )
                {
                    index[ v ] = low[ v ] = counter++;
                    stack.push_back( v );
                    on_stack[ v ] = 1;
                    calls.push_back( { v, 0 } );
                }
                else if ( on_stack[ v ] )
                {
                    low[ f.s ] = std::min( low[ f.s ], index[ v ] );
                }
                continue;
            }
            auto s = f.s;
            calls.pop_back();
            if ( !calls.empty() )
                low[ calls.back().s ] = std::min( low[ calls.back().s ], low[ s ] );
            if ( low[ s ] == index[ s ] )
            {
                std::vector<state_t> component;
                state_t v;
                do
                {
                    v = stack.back();
                    stack.pop_back();
                    on_stack[ v ] = 0;
                    component.push_back( v );
                } while ( v != s );
                components.push_back( std::move( component ) );
            }
        }
    }
    return components;
}

} // namespace detail

// Signatures of all states at once: the inert silent graph is condensed and
// step sets are accumulated from sink components upwards.
inline std::vector<signature> compute_signatures( const lts& l, const partition& p )
{
    const auto n = l.state_count();
    auto components = detail::inert_components( l, p );
    constexpr auto none = static_cast<std::size_t>( -1 );
    std::vector<std::size_t> component_of( n, none );
    for ( std::size_t c = 0; c < components.size(); ++c )
        for ( auto s : components[ c ] )
            component_of[ s ] = c;

    std::vector<signature> per_component( components.size() );
    for ( std::size_t c = 0; c < components.size(); ++c )
    {
        auto& sig = per_component[ c ];
        bool cyclic = components[ c ].size() > 1;
        for ( auto s : components[ c ] )
            for ( const auto& tr : l.out( s ) )
            {
                auto target_block = p.block_of( tr.dst );
                if ( tr.label == lts::tau && target_block == p.block_of( s ) )
                {
                    auto d = component_of[ tr.dst ];
                    if ( d == c )
                        cyclic = true;
                    else
                    {
                        detail::merge_into( sig.steps, per_component[ d ].steps );
                        sig.divergent = sig.divergent || per_component[ d ].divergent;
                    }
                }
                else
                {
                    sig.steps.emplace_back( tr.label, target_block );
                }
            }
        std::sort( sig.steps.begin(), sig.steps.end() );
        sig.steps.erase( std::unique( sig.steps.begin(), sig.steps.end() ), sig.steps.end() );
        sig.divergent = sig.divergent || cyclic;
    }

    std::vector<signature> out( n );
    for ( state_t s = 0; s < n; ++s )
        out[ s ] = per_component[ component_of[ s ] ];
    return out;
}

// Same-coloured states have the same coloured traces.
inline bool is_consistent( const lts& l, const partition& p )
{
    auto sigs = compute_signatures( l, p );
    std::vector<const signature*> first( p.block_count(), nullptr );
    for ( state_t s = 0; s < l.state_count(); ++s )
    {
        auto& f = first[ p.block_of( s ) ];
        if ( !f )
            f = &sigs[ s ];
        else if ( f->steps != sigs[ s ].steps )
            return false;
    }
    return true;
}

// No C-divergent state shares its colour with a state that is not C-divergent.
inline bool preserves_divergence( const lts& l, const partition& p )
{
    auto sigs = compute_signatures( l, p );
    std::vector<int> bit( p.block_count(), -1 );
    for ( state_t s = 0; s < l.state_count(); ++s )
    {
        auto& b = bit[ p.block_of( s ) ];
        int mine = sigs[ s ].divergent ? 1 : 0;
        if ( b == -1 )
            b = mine;
        else if ( b != mine )
            return false;
    }
    return true;
}

struct refinement
{
    partition result;
    // rounds.front() is the single block, rounds.back() == result; every
    // round refines the previous one.
    std::vector<partition> rounds;
};

inline refinement refine_with_trace( const lts& l, bool with_divergence )
{
    refinement out;
    auto current = partition::single_block( l.state_count() );
    out.rounds.push_back( current );
    for ( ;; )
    {
        auto sigs = compute_signatures( l, current );
        std::map<std::pair<block_t, signature>, block_t> ids;
        std::vector<block_t> next( l.state_count() );
        for ( state_t s = 0; s < l.state_count(); ++s )
        {
            if ( !with_divergence )
                sigs[ s ].divergent = false;
            auto [ it, fresh ] = ids.try_emplace( { current.block_of( s ), std::move( sigs[ s ] ) },
                                                  static_cast<block_t>( ids.size() ) );
            next[ s ] = it->second;
        }
        partition refined( std::move( next ) );
        if ( refined.block_count() == current.block_count() )
            break;
        current = std::move( refined );
        out.rounds.push_back( current );
    }
    out.result = current;
    return out;
}

// The coarsest consistent colouring; with_divergence additionally demands
// that it preserves divergence.
inline partition refine_to_coarsest( const lts& l, bool with_divergence )
{
    return refine_with_trace( l, with_divergence ).result;
}

// Every contracted coloured trace of s with at most max_actions actions.
// Traces are explored by a subset construction: a trace determines the set of
// states it can end in, closed under silent steps inside the last colour.
inline std::set<coloured_trace> all_coloured_traces( const lts& l, const partition& p, state_t s,
                                                     std::size_t max_actions )
{
    std::set<coloured_trace> out;
    auto inert_closure = [ & ]( const state_set& seeds, block_t colour ) {
        return tau_reach_forward( l, seeds, p.members( colour ) );
    };
    struct item
    {
        coloured_trace trace;
        state_set ends;
    };
    std::vector<item> work;
    work.push_back( { coloured_trace{ { p.block_of( s ) }, {} },
                      inert_closure( state_set( l.state_count(), { s } ), p.block_of( s ) ) } );
    while ( !work.empty() )
    {
        auto [ trace, ends ] = std::move( work.back() );
        work.pop_back();
        if ( trace.actions.size() < max_actions )
        {
            std::map<step_pair, state_set> moves;
            auto colour = trace.colours.back();
            ends.for_each( [ & ]( state_t x ) {
                for ( const auto& tr : l.out( x ) )
                {
                    auto target = p.block_of( tr.dst );
                    if ( tr.label == lts::tau && target == colour )
                        continue;
                    moves.try_emplace( { tr.label, target }, l.state_count() ).first->second.insert( tr.dst );
                }
            } );
            for ( auto& [ key, targets ] : moves )
            {
                auto extended = trace;
                extended.actions.push_back( key.first );
                extended.colours.push_back( key.second );
                work.push_back( { std::move( extended ), inert_closure( targets, key.second ) } );
            }
        }
        out.insert( std::move( trace ) );
    }
    return out;
}

} // namespace bbdiv
