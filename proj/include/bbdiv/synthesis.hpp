#pragma once

// Distinguishing and characteristic formulas from a refinement trace.
//
// When a round splits a block B of the previous partition into siblings X and
// Y, their signatures differ in a step (a, B') or in the divergence bit. The
// separator of X from Y forbids every block other than B that Y can silently
// reach (and, for a step, every block other than B' that the matching moves
// from Y can end in), using separators of earlier rounds. Every intermediate
// partition has the stuttering property, which is what makes these guards
// sufficient.

#include "colouring.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "formula.hpp"
#include "lts.hpp"
#include "partition.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

namespace bbdiv
{

class formula_synthesizer
{
    const lts* _lts;
    bool _with_divergence;
    refinement _trace;
    std::vector<std::vector<signature>> _signatures; // per round r, w.r.t. rounds[r - 1]
    std::vector<std::vector<state_t>> _representative; // per round, per block
    std::map<std::tuple<std::size_t, block_t, block_t>, formula> _memo;

    const partition& round( std::size_t r ) const { return _trace.rounds[ r ]; }

    const signature& signature_in( std::size_t r, block_t b )
    {
        return _signatures[ r ][ _representative[ r ][ b ] ];
    }

    state_set members( std::size_t r, block_t b ) const { return round( r ).members( b ); }

    // The blocks of partition r that meet `where`.
    std::vector<block_t> blocks_meeting( std::size_t r, const state_set& where ) const
    {
        std::vector<block_t> out;
        where.for_each( [ & ]( state_t s ) { out.push_back( round( r ).block_of( s ) ); } );
        std::sort( out.begin(), out.end() );
        out.erase( std::unique( out.begin(), out.end() ), out.end() );
        return out;
    }

    // True on block `keep` of partition r, false on every other block of r
    // that meets `where`.
    formula exclude_others( std::size_t r, block_t keep, const state_set& where )
    {
        std::vector<formula> guards;
        for ( auto c : blocks_meeting( r, where ) )
            if ( c != keep )
                guards.push_back( separate_blocks( r, keep, c ) );
        return conj_or_single( std::move( guards ) );
    }

    // x and y are sibling blocks of round r, r >= 1.
    formula separate_siblings( std::size_t r, block_t x, block_t y )
    {
        auto key = std::tuple{ r, x, y };
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;

        const auto& l = *_lts;
        const auto& sx = signature_in( r, x );
        const auto& sy = signature_in( r, y );
        auto parent = round( r - 1 ).block_of( _representative[ r ][ x ] );
        auto reach_y = tau_reach_forward( l, members( r, y ), l.all_states() );

        formula out;
        auto missing = std::find_if( sx.steps.begin(), sx.steps.end(), [ & ]( const step_pair& p ) {
            return !std::binary_search( sy.steps.begin(), sy.steps.end(), p );
        } );
        if ( missing != sx.steps.end() )
        {
            auto [ a, target ] = *missing;
            auto stay = exclude_others( r - 1, parent, reach_y );
            auto landing = l.empty_set();
            ( reach_y & members( r - 1, parent ) ).for_each( [ & ]( state_t u ) { landing |= opt_step( l, u, a ); } );
            auto arrive = exclude_others( r - 1, target, landing );
            out = just_before( stay, l.label_name( a ), arrive );
        }
        else if ( sy.steps != sx.steps )
        {
            out = neg( separate_siblings( r, y, x ) );
        }
        else if ( sx.divergent && !sy.divergent )
        {
            out = div( exclude_others( r - 1, parent, reach_y ) );
        }
        else if ( sy.divergent && !sx.divergent )
        {
            out = neg( separate_siblings( r, y, x ) );
        }
        else
        {
            throw internal_error( "sibling blocks with equal signatures" );
        }
        _memo.emplace( key, out );
        return out;
    }

public:
    formula_synthesizer( const lts& l, bool with_divergence )
            : _lts{ &l }, _with_divergence{ with_divergence }, _trace{ refine_with_trace( l, with_divergence ) }
    {
        _signatures.resize( _trace.rounds.size() );
        _representative.resize( _trace.rounds.size() );
        for ( std::size_t r = 0; r < _trace.rounds.size(); ++r )
        {
            if ( r > 0 )
            {
                _signatures[ r ] = compute_signatures( l, round( r - 1 ) );
                if ( !with_divergence )
                    for ( auto& sig : _signatures[ r ] )
                        sig.divergent = false;
            }
            _representative[ r ].assign( round( r ).block_count(), 0 );
            for ( state_t s = l.state_count(); s-- > 0; )
                _representative[ r ][ round( r ).block_of( s ) ] = s;
        }
    }

    [[nodiscard]] const partition& result() const { return _trace.result; }
    [[nodiscard]] const refinement& trace() const { return _trace; }
    [[nodiscard]] bool with_divergence() const { return _with_divergence; }

    // x and y are distinct blocks of round r; true on x, false on y.
    formula separate_blocks( std::size_t r, block_t x, block_t y )
    {
        auto sx = _representative[ r ][ x ];
        auto sy = _representative[ r ][ y ];
        std::size_t first = 1;
        while ( round( first ).same_block( sx, sy ) )
            ++first;
        return separate_siblings( first, round( first ).block_of( sx ), round( first ).block_of( sy ) );
    }

    formula distinguishing( state_t s, state_t t )
    {
        const auto& l = *_lts;
        if ( s >= l.state_count() || t >= l.state_count() )
            throw precondition_error( "state out of range" );
        if ( result().same_block( s, t ) )
            throw precondition_error( "states " + std::to_string( s ) + " and " + std::to_string( t ) +
                                      " are equivalent" );
        auto last = _trace.rounds.size() - 1;
        return separate_blocks( last, result().block_of( s ), result().block_of( t ) );
    }

    formula characteristic( state_t s )
    {
        if ( s >= _lts->state_count() )
            throw precondition_error( "state out of range" );
        auto last = _trace.rounds.size() - 1;
        auto own = result().block_of( s );
        std::vector<formula> guards;
        for ( block_t b = 0; b < result().block_count(); ++b )
            if ( b != own )
                guards.push_back( separate_blocks( last, own, b ) );
        return conj_or_single( std::move( guards ) );
    }
};

// A formula true at s and false at t; s and t must be inequivalent.
inline formula distinguishing_formula( const lts& l, state_t s, state_t t, bool with_divergence )
{
    return formula_synthesizer( l, with_divergence ).distinguishing( s, t );
}

// A formula true exactly at the states equivalent to s.
inline formula characteristic_formula( const lts& l, state_t s, bool with_divergence )
{
    return formula_synthesizer( l, with_divergence ).characteristic( s );
}

} // namespace bbdiv
