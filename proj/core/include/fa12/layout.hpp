// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <fa12/michelson.hpp>

#include <string>
#include <vector>

namespace fa12 {

/// How a contract's concrete storage maps onto the abstract ledger: car/cdr
/// paths to the balances map, the allowances map (nested per owner, or keyed
/// by (owner, spender) pairs), and the tracked total supply.
struct StorageLayout {
    enum class AllowanceShape { nested, pair_key };

    // false = car, true = cdr
    std::vector<bool> balances_path;
    std::vector<bool> allowances_path;
    AllowanceShape allowance_shape = AllowanceShape::pair_key;
    std::vector<bool> total_path;
};

class LayoutError : public Error {
public:
    using Error::Error;
};

class LayoutMismatch : public Error {
public:
    using Error::Error;
};

/// Parse a layout descriptor: one `field = value` per line, # comments.
/// Fields: balances_path, allowances_path, allowance_shape (nested or
/// pair-key), total_path. Paths are car/cdr separated by '/'; "." or an
/// empty value means the storage root.
StorageLayout parse_storage_layout(const std::string& text);
StorageLayout load_storage_layout(const std::string& path);

/// Project a concrete storage value onto the abstract ledger, skipping
/// zero-valued entries so the result is canonical. Throws LayoutMismatch
/// when the paths do not navigate real pairs/maps, a key is not an address,
/// or an amount is negative.
LedgerStorage decode_abstract_storage(const Value& storage,
                                      const StorageLayout& layout);

/// Zero-valued balance and allowance entries stored by the contract, as
/// human-readable descriptions. A canonical storage yields none.
std::vector<std::string> scan_zero_entries(const Value& storage,
                                           const StorageLayout& layout);

/// Build a concrete storage value of the given type whose projection under
/// the layout gives every universe member initial_balance, no allowances,
/// and a tracked total of |universe| * initial_balance. Storage fields the
/// layout does not name get zero-like defaults. Throws LayoutError when the
/// type cannot carry the layout.
Value synthesize_storage(const Ty& storage_ty, const StorageLayout& layout,
                         const std::vector<Address>& universe,
                         const TokenAmount& initial_balance);

}  // namespace fa12
