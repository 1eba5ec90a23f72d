#pragma once

// Exhaustive enumeration of the divergences from a state.
//
// On a finite system the visited-state sets of the infinite silent paths from
// s inside X are exactly the visited sets of lasso walks (a finite walk whose
// last state repeats an earlier one, pumped forever). The enumeration is a
// depth-first search over (current state, visited set, s revisited) with
// memoisation, so it is exponential in the worst case and guarded by a bound.

#include "error.hpp"
#include "lts.hpp"
#include "state_set.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace bbdiv
{

inline constexpr std::size_t default_lasso_bound = 16;
inline constexpr std::size_t max_lasso_bound = 64;

struct lasso
{
    std::vector<state_t> walk;  // silent steps only; walk.back() occurs earlier
    state_set full_set;         // every state on the walk
    state_set tail_set;         // states at positions >= 1 of the pumped path
};

inline void require_lasso_bound( const lts& l, std::size_t bound )
{
    if ( bound > max_lasso_bound )
        throw precondition_error( "lasso bound " + std::to_string( bound ) + " exceeds the supported maximum of " +
                                  std::to_string( max_lasso_bound ) );
    if ( l.state_count() > bound )
        throw bound_exceeded( "system has " + std::to_string( l.state_count() ) +
                              " states, exceeding the lasso bound of " + std::to_string( bound ) );
}

// All (full_set, tail_set) pairs realised by infinite silent paths from s
// staying inside X, each with one witnessing walk. Sorted by (full, tail).
inline std::vector<lasso> enumerate_lassos( const lts& l, state_t s, const state_set& within,
                                            std::size_t bound = default_lasso_bound )
{
    require_lasso_bound( l, bound );
    std::vector<lasso> result;
    if ( !within.contains( s ) )
        return result;

    using mask_t = std::uint64_t;
    auto bit = []( state_t x ) { return mask_t{ 1 } << x; };
    auto to_set = [ & ]( mask_t m ) {
        auto set = l.empty_set();
        for ( state_t x = 0; x < l.state_count(); ++x )
            if ( ( m >> x ) & 1U )
                set.insert( x );
        return set;
    };

    struct node
    {
        state_t cur;
        mask_t visited;
        bool revisited;
        std::size_t parent;
    };
    std::vector<node> nodes;
    std::unordered_map<std::uint64_t, std::unordered_map<mask_t, char>> seen; // key: cur*2+revisited
    auto key_of = []( state_t cur, bool rev ) { return std::uint64_t{ cur } * 2 + ( rev ? 1 : 0 ); };

    constexpr auto no_parent = static_cast<std::size_t>( -1 );
    nodes.push_back( { s, bit( s ), false, no_parent } );
    seen[ key_of( s, false ) ][ bit( s ) ] = 1;
    std::vector<std::size_t> stack{ 0 };

    std::vector<std::pair<mask_t, mask_t>> emitted;

    while ( !stack.empty() )
    {
        auto index = stack.back();
        stack.pop_back();
        auto [ cur, visited, revisited, parent ] = nodes[ index ];

        // Can the path settle here: continue forever inside the states
        // already visited, without revisiting s unless it already has?
        mask_t settle = revisited ? visited : ( visited & ~bit( s ) );
        mask_t tail = settle;
        if ( std::find( emitted.begin(), emitted.end(), std::pair{ visited, tail } ) == emitted.end() )
        {
            auto settle_set = to_set( settle );
            auto alive = divergent_within( l, settle_set );
            for ( auto next : l.tau_out( cur ) )
            {
                if ( !alive.contains( next ) )
                    continue;
                std::vector<state_t> walk;
                for ( auto i = index; i != no_parent; i = nodes[ i ].parent )
                    walk.push_back( nodes[ i ].cur );
                std::reverse( walk.begin(), walk.end() );
                auto cont = divergence_walk( l, next, settle_set );
                walk.insert( walk.end(), cont.begin(), cont.end() );
                emitted.emplace_back( visited, tail );
                result.push_back( { std::move( walk ), to_set( visited ), to_set( tail ) } );
                break;
            }
        }

        for ( auto next : l.tau_out( cur ) )
        {
            if ( !within.contains( next ) )
                continue;
            mask_t nv = visited | bit( next );
            bool nr = revisited || next == s;
            auto& slot = seen[ key_of( next, nr ) ];
            if ( slot.contains( nv ) )
                continue;
            slot[ nv ] = 1;
            nodes.push_back( { next, nv, nr, index } );
            stack.push_back( nodes.size() - 1 );
        }
    }

    std::sort( result.begin(), result.end(), []( const lasso& a, const lasso& b ) {
        if ( a.full_set != b.full_set )
            return a.full_set < b.full_set;
        return a.tail_set < b.tail_set;
    } );
    return result;
}

// Whether `candidate` is a genuine lasso from s inside X with consistent sets.
inline bool is_valid_lasso( const lts& l, state_t s, const state_set& within, const lasso& candidate )
{
    const auto& w = candidate.walk;
    if ( w.size() < 2 || w.front() != s )
        return false;
    auto full = l.empty_set();
    auto tail = l.empty_set();
    for ( std::size_t i = 0; i < w.size(); ++i )
    {
        if ( w[ i ] >= l.state_count() || !within.contains( w[ i ] ) )
            return false;
        full.insert( w[ i ] );
        if ( i > 0 )
        {
            tail.insert( w[ i ] );
            if ( !successors( l, w[ i - 1 ], lts::tau ).contains( w[ i ] ) )
                return false;
        }
    }
    if ( std::find( w.begin(), w.end() - 1, w.back() ) == w.end() - 1 )
        return false;
    return full == candidate.full_set && tail == candidate.tail_set;
}

} // namespace bbdiv
