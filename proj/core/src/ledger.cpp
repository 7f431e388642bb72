// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/ledger.hpp>

namespace fa12 {

namespace {

bool visible_char(char c)
{
    return c > 0x20 && c < 0x7f;
}

}  // namespace

Address::Address(std::string id) : id_(std::move(id))
{
    if (id_.empty())
        throw Error("address must be nonempty");
    if (id_.size() > 64)
        throw Error("address exceeds 64 bytes: " + id_);
    for (char c : id_) {
        if (!visible_char(c))
            throw Error("address contains non-visible character: " + id_);
    }
}

TokenAmount::TokenAmount(BigInt value) : value_(std::move(value))
{
    if (value_ < 0)
        throw Error("token amount must be non-negative");
}

TokenAmount TokenAmount::from_string(const std::string& digits)
{
    if (digits.empty())
        throw Error("empty token amount");
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw Error("token amount is not a decimal numeral: " + digits);
    }
    return TokenAmount(BigInt(digits));
}

TokenAmount TokenAmount::operator+(const TokenAmount& other) const
{
    return TokenAmount(value_ + other.value_);
}

TokenAmount TokenAmount::operator-(const TokenAmount& other) const
{
    if (value_ < other.value_)
        throw std::logic_error("token amount subtraction below zero");
    return TokenAmount(value_ - other.value_);
}

Mutez::Mutez(std::int64_t value) : value_(value)
{
    if (value < 0)
        throw Error("mutez must be non-negative");
}

Mutez Mutez::operator+(const Mutez& other) const
{
    if (value_ > max_value - other.value_)
        throw MutezOverflow();
    return Mutez(value_ + other.value_);
}

LedgerStorage LedgerStorage::from_raw(BalanceMap balances,
                                      AllowanceMap allowances,
                                      TokenAmount tracked_total)
{
    LedgerStorage sto;
    sto.balances_ = std::move(balances);
    sto.allowances_ = std::move(allowances);
    sto.tracked_total_ = std::move(tracked_total);
    return sto;
}

bool LedgerStorage::is_canonical() const
{
    for (const auto& [owner, amount] : balances_) {
        if (amount.is_zero())
            return false;
    }
    for (const auto& [key, amount] : allowances_) {
        if (amount.is_zero())
            return false;
    }
    return true;
}

LedgerStorage LedgerStorage::canonicalized() const
{
    LedgerStorage out;
    for (const auto& [owner, amount] : balances_) {
        if (!amount.is_zero())
            out.balances_.emplace(owner, amount);
    }
    for (const auto& [key, amount] : allowances_) {
        if (!amount.is_zero())
            out.allowances_.emplace(key, amount);
    }
    out.tracked_total_ = tracked_total_;
    return out;
}

TokenAmount get_balance(const LedgerStorage& sto, const Address& owner)
{
    auto it = sto.balances().find(owner);
    return it == sto.balances().end() ? TokenAmount() : it->second;
}

LedgerStorage set_balance(const LedgerStorage& sto, const Address& owner,
                          const TokenAmount& amount)
{
    LedgerStorage out = sto;
    TokenAmount old = get_balance(sto, owner);
    if (amount.is_zero())
        out.balances_.erase(owner);
    else
        out.balances_[owner] = amount;
    out.tracked_total_ = sto.tracked_total() - old + amount;
    return out;
}

TokenAmount get_allowance(const LedgerStorage& sto, const Address& owner,
                          const Address& spender)
{
    auto it = sto.allowances().find({owner, spender});
    return it == sto.allowances().end() ? TokenAmount() : it->second;
}

LedgerStorage set_allowance(const LedgerStorage& sto, const Address& owner,
                            const Address& spender, const TokenAmount& amount)
{
    LedgerStorage out = sto;
    LedgerStorage::AllowanceKey key{owner, spender};
    if (amount.is_zero())
        out.allowances_.erase(key);
    else
        out.allowances_[key] = amount;
    return out;
}

TokenAmount get_total_supply(const LedgerStorage& sto)
{
    return sto.tracked_total();
}

TokenAmount sum_of_all_balances(const LedgerStorage& sto)
{
    TokenAmount sum;
    for (const auto& [owner, amount] : sto.balances())
        sum = sum + amount;
    return sum;
}

bool equal_on_universe(const LedgerStorage& a, const LedgerStorage& b,
                       const std::vector<Address>& universe)
{
    for (const Address& u : universe) {
        if (get_balance(a, u) != get_balance(b, u))
            return false;
        for (const Address& v : universe) {
            if (get_allowance(a, u, v) != get_allowance(b, u, v))
                return false;
        }
    }
    return true;
}

}  // namespace fa12
