#pragma once

#include "error.hpp"
#include "lts.hpp"
#include "relation.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

namespace bbdiv
{

// The pairs (s, t) for which some s' => s and t => t'' with s' R t'', and some
// s => s'' and t' => t with s'' R t'.
inline relation stuttering_closure( const lts& l, const relation& r )
{
    if ( r.universe() != l.state_count() )
        throw precondition_error( "relation and system have different state counts" );
    const auto all = l.all_states();
    relation out( l.state_count() );
    for ( state_t s = 0; s < l.state_count(); ++s )
    {
        const state_set self( l.state_count(), { s } );
        auto before = tau_reach_backward( l, r.image( tau_reach_backward( l, self, all ) ), all );
        auto after = tau_reach_forward( l, r.image( tau_reach_forward( l, self, all ) ), all );
        ( before & after ).for_each( [ & ]( state_t t ) { out.insert( s, t ); } );
    }
    return out;
}

// Whenever s R t0 and s R tn for a silent path t0 -> ... -> tn, every ti on
// the path is related to s. A state lies on such a path iff it is silently
// reachable from a partner of s and silently reaches one.
inline bool has_stuttering_property( const lts& l, const relation& r )
{
    const auto all = l.all_states();
    for ( state_t s = 0; s < l.state_count(); ++s )
    {
        const auto& partners = r.image( s );
        if ( partners.empty() )
            continue;
        auto between = tau_reach_forward( l, partners, all ) & tau_reach_backward( l, partners, all );
        if ( !between.subset_of( partners ) )
            return false;
    }
    return true;
}

// Given s R t and s => target, follows the silent path from s step by step,
// answering each step with T, and returns the t' with t => t' and target R t'.
// Returns nothing if some step cannot be answered (r violates T there).
inline std::optional<state_t> transfer_multi( const lts& l, const relation& r, state_t s, state_t t,
                                              state_t target )
{
    if ( s >= l.state_count() || t >= l.state_count() || target >= l.state_count() )
        throw precondition_error( "state out of range" );
    if ( !r.contains( s, t ) )
        throw precondition_error( "the start pair is not related" );

    constexpr auto none = static_cast<state_t>( -1 );
    std::vector<state_t> parent( l.state_count(), none );
    parent[ s ] = s;
    std::deque<state_t> queue{ s };
    while ( !queue.empty() && parent[ target ] == none )
    {
        auto cur = queue.front();
        queue.pop_front();
        for ( auto next : l.tau_out( cur ) )
            if ( parent[ next ] == none )
            {
                parent[ next ] = cur;
                queue.push_back( next );
            }
    }
    if ( parent[ target ] == none )
        throw precondition_error( "target is not silently reachable from s" );
    std::vector<state_t> route{ target };
    while ( route.back() != s )
        route.push_back( parent[ route.back() ] );

    auto current = t;
    for ( auto i = route.size() - 1; i > 0; --i )
    {
        auto from = route[ i ];
        auto to = route[ i - 1 ];
        std::optional<state_t> real;
        std::optional<state_t> stutter;
        ( tau_closure( l, current ) & r.image( from ) ).for_each( [ & ]( state_t mid ) {
            if ( !real )
                for ( auto next : l.tau_out( mid ) )
                    if ( r.contains( to, next ) )
                    {
                        real = next;
                        break;
                    }
            if ( !stutter && r.contains( to, mid ) )
                stutter = mid;
        } );
        if ( real )
            current = *real;
        else if ( stutter )
            current = *stutter;
        else
            return std::nullopt;
    }
    return current;
}

} // namespace bbdiv
