#ifndef FEATSIM_IMPORTANCE_HPP
#define FEATSIM_IMPORTANCE_HPP

#include <map>
#include <string>

namespace featsim {

// Per-instance feature importance: one real score per unique token type of
// the instance. `model` and `method` tag where the scores came from.
struct ImportanceVector {
  std::string instance_id;
  std::string model;
  std::string method;
  std::map<std::string, double> scores;
};

}  // namespace featsim

#endif
