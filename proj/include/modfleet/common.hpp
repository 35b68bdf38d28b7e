#ifndef MODFLEET_COMMON_HPP
#define MODFLEET_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modfleet {

// All simulation clocks and durations are integer minutes.
using Minutes = long long;
using Money = double;

enum class TaskType { type1, type2 };
enum class TaskSize { medium, heavy };

inline std::string to_string(TaskType t) {
    return t == TaskType::type1 ? "type1" : "type2";
}

inline std::string to_string(TaskSize s) {
    return s == TaskSize::medium ? "medium" : "heavy";
}

inline TaskType task_type_from_string(const std::string& s) {
    if (s == "type1") return TaskType::type1;
    if (s == "type2") return TaskType::type2;
    throw std::invalid_argument("unknown task type: " + s);
}

inline TaskSize task_size_from_string(const std::string& s) {
    if (s == "medium") return TaskSize::medium;
    if (s == "heavy") return TaskSize::heavy;
    throw std::invalid_argument("unknown task size: " + s);
}

// Worker cap for the OpenMP batch layers (population evaluation, experiment
// cells). 0 means "use the OpenMP default". Reads MODFLEET_WORKERS once.
int worker_limit();
void set_worker_limit(int n);

} // namespace modfleet

#endif
