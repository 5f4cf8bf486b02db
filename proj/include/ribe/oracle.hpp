#ifndef ribe_oracle_hpp
#define ribe_oracle_hpp

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ribe/hst.hpp"
#include "ribe/metric.hpp"
#include "ribe/skeleton.hpp"

namespace ribe {

// Euler tour + sparse-table range-minimum; O(1) lca with a constant number
// of array probes
class LcaIndex {
public:
    LcaIndex() = default;
    explicit LcaIndex(const HstTree& t);

    int lca(int node_a, int node_b) const;
    // counts individual array reads; the query contract is probes <= 8
    int lca_probed(int node_a, int node_b, int& probes) const;

private:
    std::vector<int> euler_;               // node id per tour position
    std::vector<int> first_;               // node id -> first tour position
    std::vector<int> depth_;               // depth per tour position
    std::vector<std::vector<int>> table_;  // table_[k][i] = argmin depth over [i, i+2^k)
    std::vector<int> log2_;                // floor(log2) lookup
};

struct OracleLevel {
    std::vector<int> remaining;  // R_k, sorted global ids
    std::vector<int> subset;     // S_k, sorted global ids
    SkeletonResult skeleton;     // over R_k, local ids = positions in remaining
    LcaIndex lca;
    std::vector<int> local_of;   // global id -> local id in R_k, -1 if absent
};

/*
 * Iterated-skeleton distance oracle: peel S_1 from X, S_2 from X \ S_1, ...
 * The S_k partition the space; a pair is answered in the level where its
 * first endpoint was peeled, so one endpoint is always padded there.
 */
struct OracleStructure {
    int n = 0;
    double epsilon = 0;
    std::uint64_t seed = 0;
    double certified_distortion = 0;  // D = 128 / epsilon
    std::vector<OracleLevel> levels;
    std::vector<int> level_of;  // point -> k with point in S_k (0-based)
};

struct RankingStructure {
    int n = 0;
    double factor = 0;                      // F = 6 D
    std::vector<std::vector<int>> order;    // order[x][i-1] = i-th closest under rho-hat
    std::vector<std::vector<int>> inverse;  // inverse[x][u] = 1-based rank of u
};

LcaIndex build_lca(const HstTree& t);
OracleStructure build_oracle(const FiniteMetric& m, double epsilon, std::uint64_t seed);

// k = min(level_of i, level_of j); diameter of the level-k lca; 0 when i == j
double query_distance(const OracleStructure& o, int i, int j);
double query_distance_probed(const OracleStructure& o, int i, int j, int& probes);

// rho_k of each level extended to all of X; order_x sorted by
// (rho-hat_{level_of x}(x, .), point id)
RankingStructure build_ranking(const OracleStructure& o, const FiniteMetric& m);

int rank_query(const RankingStructure& r, int x, int i);    // 1 <= i <= n
int rank_inverse(const RankingStructure& r, int x, int u);  // 1-based rank

// "RIBE-ORACLE v1 n epsilon seed D", per-level skeletons, then a RANKING
// section so rank queries work from the dump alone
void write_oracle(std::ostream& out, const OracleStructure& o, const RankingStructure& r);
void read_oracle(std::istream& in, OracleStructure& o, RankingStructure& r);
void save_oracle(const std::string& path, const OracleStructure& o, const RankingStructure& r);
void load_oracle(const std::string& path, OracleStructure& o, RankingStructure& r);

}

#endif
