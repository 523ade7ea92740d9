/*
 * Versioned binary snapshot of a constructed group, used by the CLI cache.
 *
 *   header:  magic "IGRP" | u32 version | u32 n | u32 p | u32 gen count
 *   gens:    gen count x u32
 *   mode:    u8; 0 = packed multiplication table, 1 = ambient descriptor
 *   mode 0:  n*n x u16 (row major)
 *   mode 1:  u32 length | canonical GroupSpec JSON bytes
 *
 * Loading a table snapshot re-derives parent words by the same breadth-first
 * walk that produced the original indexing and fails loudly if the stored
 * table is not closure-consistent.
 */
#pragma once

#include <string>

#include "intenselab/group.hpp"

namespace ilab {

void snapshot_save(const std::string &path, const GroupTable &G,
                   const std::string &descriptor);

struct SnapshotLoad {
  GroupPtr group;          // set when the snapshot carried a table
  std::string descriptor;  // set when the snapshot carried a descriptor
};

SnapshotLoad snapshot_load(const std::string &path);

}  // namespace ilab
