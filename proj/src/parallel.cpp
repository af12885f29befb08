#include "semsec/parallel.hpp"

#include <omp.h>

namespace semsec {

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace semsec
