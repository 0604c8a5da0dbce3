#ifndef STALLINGS_STALLINGS_HPP_
#define STALLINGS_STALLINGS_HPP_

#include "error.hpp"
#include "graph.hpp"
#include "word.hpp"
#include "core.hpp"
#include "covering.hpp"
#include "galois.hpp"
#include "hall.hpp"
#include "lattice_ops.hpp"
#include "hn.hpp"

#endif  // STALLINGS_STALLINGS_HPP_
