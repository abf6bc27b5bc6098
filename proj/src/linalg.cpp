#include "nilrigid/linalg.hpp"

namespace nilrigid {

template class ExactMatrix<Rational>;
template class ExactMatrix<Gaussian>;
template class StreamingEliminator<Rational>;
template class StreamingEliminator<Gaussian>;

}  // namespace nilrigid
