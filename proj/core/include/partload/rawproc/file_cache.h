#pragma once

#include <string>

namespace partload::rawproc {

// Fraction of the file's pages resident in the page cache (mincore), or a
// negative value when it cannot be determined.
double resident_fraction(const std::string& path);

// Drops the file's clean pages from the page cache (posix_fadvise
// DONTNEED after fdatasync). Returns true when the file is verified to be
// at most 5% resident afterwards.
bool evict_file(const std::string& path);

}  // namespace partload::rawproc
