// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fa12 {

using BigInt = boost::multiprecision::cpp_int;

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Opaque printable account identifier. Ordering is bytewise so ledger maps
/// iterate in a canonical order.
class Address {
public:
    Address() = default;
    explicit Address(std::string id);

    const std::string& id() const noexcept { return id_; }

    auto operator<=>(const Address&) const = default;

private:
    std::string id_;
};

/// Unbounded non-negative token quantity. Arithmetic is exact; subtraction
/// below zero is a logic error, callers must guard with comparisons first.
class TokenAmount {
public:
    TokenAmount() = default;
    explicit TokenAmount(BigInt value);
    explicit TokenAmount(std::uint64_t value) : value_(value) {}

    static TokenAmount from_string(const std::string& digits);

    const BigInt& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }
    std::string str() const { return value_.str(); }

    TokenAmount operator+(const TokenAmount& other) const;
    TokenAmount operator-(const TokenAmount& other) const;

    bool operator==(const TokenAmount& other) const {
        return value_ == other.value_;
    }
    std::strong_ordering operator<=>(const TokenAmount& other) const {
        if (value_ < other.value_)
            return std::strong_ordering::less;
        if (value_ > other.value_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    BigInt value_;
};

/// Native chain token quantity in units of 1e-6 tez, capped at 2^63-1.
class Mutez {
public:
    static constexpr std::int64_t max_value = INT64_MAX;

    Mutez() = default;
    explicit Mutez(std::int64_t value);

    std::int64_t value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    /// Errors on overflow past 2^63-1.
    Mutez operator+(const Mutez& other) const;

    auto operator<=>(const Mutez&) const = default;

private:
    std::int64_t value_ = 0;
};

class MutezOverflow : public Error {
public:
    MutezOverflow() : Error("mutez addition overflow") {}
};

/// The ledger state every FA1.2 contract must be able to project itself onto:
/// balances, transfer allowances, and the separately tracked total supply.
///
/// Storages built through set_balance/set_allowance are canonical (no stored
/// entry is zero, so map equality coincides with extensional ledger equality).
/// from_raw keeps zero entries as given so projections of implementations
/// under test stay inspectable; is_canonical() reports whether any survive.
class LedgerStorage {
public:
    using BalanceMap = std::map<Address, TokenAmount>;
    using AllowanceKey = std::pair<Address, Address>;  // (owner, spender)
    using AllowanceMap = std::map<AllowanceKey, TokenAmount>;

    LedgerStorage() = default;

    static LedgerStorage from_raw(BalanceMap balances,
                                  AllowanceMap allowances,
                                  TokenAmount tracked_total);

    const BalanceMap& balances() const noexcept { return balances_; }
    const AllowanceMap& allowances() const noexcept { return allowances_; }
    const TokenAmount& tracked_total() const noexcept { return tracked_total_; }

    bool is_canonical() const;
    LedgerStorage canonicalized() const;

    bool operator==(const LedgerStorage&) const = default;

private:
    friend LedgerStorage set_balance(const LedgerStorage&, const Address&,
                                     const TokenAmount&);
    friend LedgerStorage set_allowance(const LedgerStorage&, const Address&,
                                       const Address&, const TokenAmount&);

    BalanceMap balances_;
    AllowanceMap allowances_;
    TokenAmount tracked_total_;
};

/// Stored balance, or zero when the owner is absent.
TokenAmount get_balance(const LedgerStorage& sto, const Address& owner);

/// Rebinds owner's balance (entry removed when zero). Allowances and other
/// balances are untouched; the tracked total is adjusted incrementally.
LedgerStorage set_balance(const LedgerStorage& sto, const Address& owner,
                          const TokenAmount& amount);

TokenAmount get_allowance(const LedgerStorage& sto, const Address& owner,
                          const Address& spender);

LedgerStorage set_allowance(const LedgerStorage& sto, const Address& owner,
                            const Address& spender, const TokenAmount& amount);

/// The separately tracked total supply.
TokenAmount get_total_supply(const LedgerStorage& sto);

/// Exact fold over all balance entries in canonical order.
TokenAmount sum_of_all_balances(const LedgerStorage& sto);

/// Extensional ledger equality restricted to a finite address universe:
/// balances per address and allowances per ordered address pair. The tracked
/// total is deliberately not part of this comparison.
bool equal_on_universe(const LedgerStorage& a, const LedgerStorage& b,
                       const std::vector<Address>& universe);

}  // namespace fa12
