"""Quick manual smoke run: prints a few verdicts without pytest."""
from services.arrowing import arrows
from services.graph_core import make_cycle, make_path
from services.ramsey import classify_instance, l_sequence, size_ramsey_exhaustive
from services.star_forest import parse_forest

pair = [parse_forest("3,3"), parse_forest("3,2")]
lseq = l_sequence(pair)
print("\n⭐ Formula for (3,3; 3,2)...")
print(f"l-sequence: {list(lseq.values)} - total: {lseq.total} - "
      f"covered by: {classify_instance(pair).covering_result}")

small = [parse_forest("2"), parse_forest("1,1")]
print("\n🎨 Arrowing (K_{1,2}, 2K_2)...")
print(f"P5: {arrows(make_path(5), small).outcome.value}")
print(f"C4: {arrows(make_cycle(4), small).outcome.value}")

print("\n🔎 Exhaustive search...")
result = size_ramsey_exhaustive(small, max_edges=4)
print(f"value: {result.value} - status: {result.status} - minimal: {result.to_json()['minimal_graphs']}")
