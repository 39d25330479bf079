#pragma once

#include <string>
#include <vector>

namespace lbmfd {

// Interned symbolic parameter (lambda, relaxation rates, equilibrium
// constants, ...). Ids index a process-wide alphabet; the monomial order is
// graded lexicographic with ties broken by id, so all canonical forms are
// deterministic within a run.
class Param {
public:
    Param() : id_(-1) {}
    explicit Param(const std::string& name);

    int id() const { return id_; }
    const std::string& name() const;
    bool valid() const { return id_ >= 0; }

    friend bool operator==(Param a, Param b) { return a.id_ == b.id_; }
    friend bool operator!=(Param a, Param b) { return a.id_ != b.id_; }
    friend bool operator<(Param a, Param b) { return a.id_ < b.id_; }

    static Param from_id(int id);
    // Looks a name up without interning; returns an invalid Param if unknown.
    static Param lookup(const std::string& name);

private:
    int id_;
};

}  // namespace lbmfd
