#ifndef FEATSIM_MODEL_IO_HPP
#define FEATSIM_MODEL_IO_HPP

#include <filesystem>
#include <memory>
#include <string>

#include "featsim/corpus.hpp"
#include "featsim/models.hpp"

namespace featsim {

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path,
                        std::shared_ptr<const Vocabulary> vocab);

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);
std::shared_ptr<const Vocabulary> load_vocabulary(const std::filesystem::path& path);

}  // namespace featsim

#endif
