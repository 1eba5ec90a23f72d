#pragma once

#include "error.hpp"
#include "state_set.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bbdiv
{

struct transition
{
    state_t src;
    label_t label;
    state_t dst;

    friend auto operator<=>( const transition&, const transition& ) = default;
};

inline constexpr std::string_view tau_name = "tau";

// A finite labelled transition system. Label 0 is always the silent action.
// Immutable after construction; adjacency is precomputed in CSR form.
class lts
{
    std::size_t _state_count = 0;
    state_t _initial = 0;
    std::vector<std::string> _labels{ std::string{ tau_name } };
    std::vector<transition> _transitions;

    std::vector<std::size_t> _out_offset;
    std::vector<std::size_t> _tau_out_offset;
    std::vector<state_t> _tau_out;
    std::vector<std::size_t> _tau_in_offset;
    std::vector<state_t> _tau_in;

    static void check_label( const std::string& name )
    {
        if ( name.empty() )
            throw precondition_error( "empty action label" );
        if ( name.find( '"' ) != std::string::npos )
            throw precondition_error( "action label contains a double quote: " + name );
    }

    void build_index()
    {
        _out_offset.assign( _state_count + 1, 0 );
        _tau_out_offset.assign( _state_count + 1, 0 );
        _tau_in_offset.assign( _state_count + 1, 0 );
        for ( const auto& t : _transitions )
        {
            ++_out_offset[ t.src + 1 ];
            if ( t.label == tau )
            {
                ++_tau_out_offset[ t.src + 1 ];
                ++_tau_in_offset[ t.dst + 1 ];
            }
        }
        for ( std::size_t s = 0; s < _state_count; ++s )
        {
            _out_offset[ s + 1 ] += _out_offset[ s ];
            _tau_out_offset[ s + 1 ] += _tau_out_offset[ s ];
            _tau_in_offset[ s + 1 ] += _tau_in_offset[ s ];
        }
        _tau_out.resize( _tau_out_offset[ _state_count ] );
        _tau_in.resize( _tau_in_offset[ _state_count ] );
        auto out_fill = _tau_out_offset;
        auto in_fill = _tau_in_offset;
        for ( const auto& t : _transitions )
        {
            if ( t.label != tau )
                continue;
            _tau_out[ out_fill[ t.src ]++ ] = t.dst;
            _tau_in[ in_fill[ t.dst ]++ ] = t.src;
        }
    }

public:
    static constexpr label_t tau = 0;

    lts() { build_index(); }

    // labels[0] must be the silent action; the remaining labels must be
    // distinct, non-empty, quote-free and different from tau.
    lts( std::size_t state_count, state_t initial, std::vector<std::string> labels,
         std::vector<transition> transitions )
            : _state_count{ state_count }, _initial{ initial }, _labels{ std::move( labels ) },
              _transitions{ std::move( transitions ) }
    {
        if ( _labels.empty() || _labels[ 0 ] != tau_name )
            throw precondition_error( "label 0 must be the silent action" );
        for ( std::size_t i = 1; i < _labels.size(); ++i )
        {
            check_label( _labels[ i ] );
            if ( _labels[ i ] == tau_name || _labels[ i ] == "i" )
                throw precondition_error( "silent action listed twice" );
            for ( std::size_t j = 1; j < i; ++j )
                if ( _labels[ j ] == _labels[ i ] )
                    throw precondition_error( "duplicate action label: " + _labels[ i ] );
        }
        if ( _state_count == 0 ? _initial != 0 : _initial >= _state_count )
            throw precondition_error( "initial state out of range" );
        for ( const auto& t : _transitions )
        {
            if ( t.src >= _state_count || t.dst >= _state_count )
                throw precondition_error( "transition endpoint out of range" );
            if ( t.label >= _labels.size() )
                throw precondition_error( "transition label out of range" );
        }
        std::sort( _transitions.begin(), _transitions.end() );
        _transitions.erase( std::unique( _transitions.begin(), _transitions.end() ), _transitions.end() );
        build_index();
    }

    [[nodiscard]] std::size_t state_count() const { return _state_count; }
    [[nodiscard]] state_t initial() const { return _initial; }
    [[nodiscard]] std::size_t label_count() const { return _labels.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return _labels; }
    [[nodiscard]] const std::string& label_name( label_t a ) const { return _labels.at( a ); }
    [[nodiscard]] const std::vector<transition>& transitions() const { return _transitions; }

    [[nodiscard]] std::optional<label_t> find_label( std::string_view name ) const
    {
        if ( name == "i" )
            return tau;
        for ( std::size_t i = 0; i < _labels.size(); ++i )
            if ( _labels[ i ] == name )
                return static_cast<label_t>( i );
        return std::nullopt;
    }

    // Outgoing transitions of s, sorted by (label, target).
    [[nodiscard]] std::span<const transition> out( state_t s ) const
    {
        return { _transitions.data() + _out_offset[ s ], _out_offset[ s + 1 ] - _out_offset[ s ] };
    }

    [[nodiscard]] std::span<const state_t> tau_out( state_t s ) const
    {
        return { _tau_out.data() + _tau_out_offset[ s ], _tau_out_offset[ s + 1 ] - _tau_out_offset[ s ] };
    }

    [[nodiscard]] std::span<const state_t> tau_in( state_t s ) const
    {
        return { _tau_in.data() + _tau_in_offset[ s ], _tau_in_offset[ s + 1 ] - _tau_in_offset[ s ] };
    }

    [[nodiscard]] state_set empty_set() const { return state_set( _state_count ); }
    [[nodiscard]] state_set all_states() const { return state_set::full( _state_count ); }
};

// { s' | s -a-> s' }
inline state_set successors( const lts& l, state_t s, label_t a )
{
    auto result = l.empty_set();
    for ( const auto& t : l.out( s ) )
        if ( t.label == a )
            result.insert( t.dst );
    return result;
}

// The optional step: successors(s, a), plus s itself when a is silent.
inline state_set opt_step( const lts& l, state_t s, label_t a )
{
    auto result = successors( l, s, a );
    if ( a == lts::tau )
        result.insert( s );
    return result;
}

// States reachable from the seeds by silent steps through `within`
// (seeds themselves are always included).
inline state_set tau_reach_forward( const lts& l, const state_set& seeds, const state_set& within )
{
    auto seen = seeds;
    auto stack = seeds.members();
    while ( !stack.empty() )
    {
        auto s = stack.back();
        stack.pop_back();
        for ( auto next : l.tau_out( s ) )
            if ( within.contains( next ) && !seen.contains( next ) )
            {
                seen.insert( next );
                stack.push_back( next );
            }
    }
    return seen;
}

// States that reach one of the seeds by silent steps through `within`.
inline state_set tau_reach_backward( const lts& l, const state_set& seeds, const state_set& within )
{
    auto seen = seeds;
    auto stack = seeds.members();
    while ( !stack.empty() )
    {
        auto s = stack.back();
        stack.pop_back();
        for ( auto prev : l.tau_in( s ) )
            if ( within.contains( prev ) && !seen.contains( prev ) )
            {
                seen.insert( prev );
                stack.push_back( prev );
            }
    }
    return seen;
}

// s => s'
inline state_set tau_closure( const lts& l, state_t s )
{
    return tau_reach_forward( l, state_set( l.state_count(), { s } ), l.all_states() );
}

// s ->+ s'
inline state_set tau_plus( const lts& l, state_t s )
{
    auto seeds = successors( l, s, lts::tau );
    return tau_reach_forward( l, seeds, l.all_states() );
}

// The largest Y within X such that every member of Y has a silent successor
// in Y, i.e. the states of X that start an infinite silent path inside X.
inline state_set divergent_within( const lts& l, const state_set& within )
{
    auto alive = within;
    std::vector<std::size_t> live_succ( l.state_count(), 0 );
    std::vector<state_t> dead;
    within.for_each( [ & ]( state_t s ) {
        for ( auto next : l.tau_out( s ) )
            if ( within.contains( next ) )
                ++live_succ[ s ];
        if ( live_succ[ s ] == 0 )
            dead.push_back( s );
    } );
    while ( !dead.empty() )
    {
        auto s = dead.back();
        dead.pop_back();
        if ( !alive.contains( s ) )
            continue;
        alive.erase( s );
        for ( auto prev : l.tau_in( s ) )
            if ( alive.contains( prev ) && --live_succ[ prev ] == 0 )
                dead.push_back( prev );
    }
    return alive;
}

// Whether an infinite silent path from s stays inside X throughout.
inline bool has_divergence_within( const lts& l, state_t s, const state_set& within )
{
    if ( !within.contains( s ) )
        return false;
    return divergent_within( l, within ).contains( s );
}

// Some infinite silent path from s inside X, as a lasso walk whose last state
// repeats an earlier one. Empty when none exists.
inline std::vector<state_t> divergence_walk( const lts& l, state_t s, const state_set& within )
{
    auto alive = divergent_within( l, within );
    if ( !alive.contains( s ) )
        return {};
    std::vector<state_t> walk{ s };
    std::vector<std::size_t> position( l.state_count(), static_cast<std::size_t>( -1 ) );
    position[ s ] = 0;
    auto cur = s;
    for ( ;; )
    {
        state_t next = cur;
        for ( auto n : l.tau_out( cur ) )
            if ( alive.contains( n ) )
            {
                next = n;
                break;
            }
        walk.push_back( next );
        if ( position[ next ] != static_cast<std::size_t>( -1 ) )
            return walk;
        position[ next ] = walk.size() - 1;
        cur = next;
    }
}

// s0 -a1-> s1 -a2-> ... -an-> sn
struct path
{
    std::vector<state_t> states;
    std::vector<label_t> actions;
};

inline bool is_valid_path( const lts& l, const path& p )
{
    if ( p.states.empty() || p.actions.size() + 1 != p.states.size() )
        return false;
    for ( auto s : p.states )
        if ( s >= l.state_count() )
            return false;
    for ( std::size_t k = 0; k < p.actions.size(); ++k )
        if ( p.actions[ k ] >= l.label_count() ||
             !successors( l, p.states[ k ], p.actions[ k ] ).contains( p.states[ k + 1 ] ) )
            return false;
    return true;
}

} // namespace bbdiv
