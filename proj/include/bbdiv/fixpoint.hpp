#pragma once

// Branching bisimilarity (with or without explicit divergence) as the
// greatest fixpoint of pair deletion, starting from the total relation.
//
// A pair survives a round when T holds in both orientations and, with
// divergence, when every divergence of either state hits a state related to
// a silent successor of the other. The divergences of s are represented by
// the visited sets of its lassos, which do not depend on the relation, so the
// deletion step is monotone.

#include "colouring.hpp"
#include "conditions.hpp"
#include "lasso.hpp"
#include "lts.hpp"
#include "partition.hpp"
#include "relation.hpp"

#include <cstddef>
#include <vector>

namespace bbdiv
{

namespace detail
{

inline bool transfer_holds( const lts& l, const relation& r, const std::vector<state_set>& closure, state_t s,
                            state_t t )
{
    auto candidates = closure[ t ] & r.image( s );
    for ( const auto& tr : l.out( s ) )
    {
        bool matched = false;
        candidates.for_each( [ & ]( state_t mid ) {
            matched = matched || opt_step( l, mid, tr.label ).intersects( r.image( tr.dst ) );
        } );
        if ( !matched )
            return false;
    }
    return true;
}

} // namespace detail

// The raw fixpoint engine: exponential divergence enumeration, so limited to
// systems within the lasso bound.
inline partition gfp_equivalence( const lts& l, bool with_divergence, std::size_t lasso_bound = default_lasso_bound )
{
    const auto n = l.state_count();
    std::vector<std::vector<state_set>> divergences( n );
    if ( with_divergence )
    {
        require_lasso_bound( l, lasso_bound );
        for ( state_t s = 0; s < n; ++s )
            for ( auto& d : enumerate_lassos( l, s, l.all_states(), lasso_bound ) )
                if ( divergences[ s ].empty() || divergences[ s ].back() != d.full_set )
                    divergences[ s ].push_back( std::move( d.full_set ) );
    }
    std::vector<state_set> closure;
    std::vector<state_set> tau_succ;
    for ( state_t s = 0; s < n; ++s )
    {
        closure.push_back( tau_closure( l, s ) );
        tau_succ.push_back( successors( l, s, lts::tau ) );
    }

    auto ok = [ & ]( const relation& r, state_t s, state_t t ) {
        if ( !detail::transfer_holds( l, r, closure, s, t ) )
            return false;
        if ( divergences[ s ].empty() )
            return true;
        auto matched = r.preimage( tau_succ[ t ] );
        for ( const auto& visited : divergences[ s ] )
            if ( !visited.intersects( matched ) )
                return false;
        return true;
    };

    auto r = relation::total( n );
    for ( bool changed = true; changed; )
    {
        changed = false;
        for ( auto [ s, t ] : r.pairs() )
        {
            if ( t < s || !r.contains( s, t ) )
                continue;
            if ( !ok( r, s, t ) || !ok( r, t, s ) )
            {
                r.erase( s, t );
                r.erase( t, s );
                changed = true;
            }
        }
    }
    return partition_of_equivalence( r );
}

// Branching bisimilarity. Larger systems go to signature refinement.
inline partition compute_bb( const lts& l, std::size_t bound = default_lasso_bound )
{
    if ( l.state_count() > bound )
        return refine_to_coarsest( l, false );
    return gfp_equivalence( l, false, bound );
}

// Branching bisimilarity with explicit divergence.
inline partition compute_bbd( const lts& l, std::size_t bound = default_lasso_bound )
{
    if ( l.state_count() > bound )
        return refine_to_coarsest( l, true );
    return gfp_equivalence( l, true, bound );
}

// Checks every relational condition on the equivalence induced by p.
inline condition_report verify_equivalence_certificate( const lts& l, const partition& p,
                                                        const check_options& opt = {} )
{
    if ( p.state_count() != l.state_count() )
        throw precondition_error( "partition and system have different state counts" );
    return check_conditions( l, relation::of_partition( p ), all_conditions, opt );
}

} // namespace bbdiv
