#pragma once

namespace gvb {

// Upper bound on n for every enumeration over S_n, P(n) or subsets of
// {1..n}. Defaults to 8 and can be overridden with GRADEDVB_MAX_N.
int max_n();

// Throws CapExceeded when n exceeds max_n() and DomainError when n < 1.
void check_n(int n);

}  // namespace gvb
