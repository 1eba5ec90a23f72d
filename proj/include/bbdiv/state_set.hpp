#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace bbdiv
{

using state_t = std::uint32_t;
using label_t = std::uint32_t;

// Dense bitset over the states {0, ..., universe-1} of a fixed system.
class state_set
{
    std::size_t _universe = 0;
    std::vector<std::uint64_t> _words;

    static std::size_t word_count( std::size_t n ) { return ( n + 63 ) / 64; }

public:
    state_set() = default;

    explicit state_set( std::size_t universe ) : _universe{ universe }, _words( word_count( universe ), 0 ) {}

    state_set( std::size_t universe, std::initializer_list<state_t> members ) : state_set( universe )
    {
        for ( auto s : members )
            insert( s );
    }

    static state_set full( std::size_t universe )
    {
        state_set result( universe );
        for ( std::size_t s = 0; s < universe; ++s )
            result.insert( static_cast<state_t>( s ) );
        return result;
    }

    [[nodiscard]] std::size_t universe() const { return _universe; }

    [[nodiscard]] bool contains( state_t s ) const
    {
        return s < _universe && ( ( _words[ s / 64 ] >> ( s % 64 ) ) & 1U ) != 0;
    }

    void insert( state_t s ) { _words[ s / 64 ] |= std::uint64_t{ 1 } << ( s % 64 ); }
    void erase( state_t s ) { _words[ s / 64 ] &= ~( std::uint64_t{ 1 } << ( s % 64 ) ); }

    [[nodiscard]] std::size_t size() const
    {
        std::size_t n = 0;
        for ( auto w : _words )
            n += static_cast<std::size_t>( std::popcount( w ) );
        return n;
    }

    [[nodiscard]] bool empty() const
    {
        for ( auto w : _words )
            if ( w != 0 )
                return false;
        return true;
    }

    [[nodiscard]] bool subset_of( const state_set& other ) const
    {
        for ( std::size_t i = 0; i < _words.size(); ++i )
            if ( ( _words[ i ] & ~other._words[ i ] ) != 0 )
                return false;
        return true;
    }

    [[nodiscard]] bool intersects( const state_set& other ) const
    {
        for ( std::size_t i = 0; i < _words.size(); ++i )
            if ( ( _words[ i ] & other._words[ i ] ) != 0 )
                return true;
        return false;
    }

    state_set& operator|=( const state_set& other )
    {
        for ( std::size_t i = 0; i < _words.size(); ++i )
            _words[ i ] |= other._words[ i ];
        return *this;
    }

    state_set& operator&=( const state_set& other )
    {
        for ( std::size_t i = 0; i < _words.size(); ++i )
            _words[ i ] &= other._words[ i ];
        return *this;
    }

    // Set difference.
    state_set& operator-=( const state_set& other )
    {
        for ( std::size_t i = 0; i < _words.size(); ++i )
            _words[ i ] &= ~other._words[ i ];
        return *this;
    }

    friend state_set operator|( state_set a, const state_set& b ) { return a |= b; }
    friend state_set operator&( state_set a, const state_set& b ) { return a &= b; }
    friend state_set operator-( state_set a, const state_set& b ) { return a -= b; }

    [[nodiscard]] state_set complement() const
    {
        return full( _universe ) - *this;
    }

    // Members in ascending order.
    [[nodiscard]] std::vector<state_t> members() const
    {
        std::vector<state_t> out;
        for ( std::size_t i = 0; i < _words.size(); ++i )
        {
            auto w = _words[ i ];
            while ( w != 0 )
            {
                auto bit = static_cast<std::size_t>( std::countr_zero( w ) );
                out.push_back( static_cast<state_t>( i * 64 + bit ) );
                w &= w - 1;
            }
        }
        return out;
    }

    template <typename F> void for_each( F&& f ) const
    {
        for ( std::size_t i = 0; i < _words.size(); ++i )
        {
            auto w = _words[ i ];
            while ( w != 0 )
            {
                auto bit = static_cast<std::size_t>( std::countr_zero( w ) );
                f( static_cast<state_t>( i * 64 + bit ) );
                w &= w - 1;
            }
        }
    }

    friend bool operator==( const state_set&, const state_set& ) = default;

    // Lexicographic on the bit words; only used to give sets a stable order.
    friend std::strong_ordering operator<=>( const state_set& a, const state_set& b )
    {
        if ( auto c = a._universe <=> b._universe; c != 0 )
            return c;
        return a._words <=> b._words;
    }
};

} // namespace bbdiv
