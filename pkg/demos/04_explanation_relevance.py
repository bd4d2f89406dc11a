"""Plan explanation as model reconciliation against the empty model.

Start from a model whose actions have no conditions at all and an empty
initial state, then ask: what is the smallest set of real conditions that
makes the plan valid AND optimal? Those units are the plan's relevant
structure; everything else can be grayed out when the plan is rendered.
"""

from importlib import resources

import xaiplan as xp
from xaiplan import vizdoc

data = resources.files("xaiplan") / "data"
domain = xp.parse_domain((data / "collective-decision.pddl").read_text())
problem = xp.parse_problem((data / "cd-propose.pddl").read_text(), domain)
task = xp.ground(domain, problem)

plan = xp.solve_optimal(task).plan
print(f"plan under explanation (cost {plan.cost}):")
for step in plan.steps:
    print(f"  {step}")

report = xp.relevance(task, plan)
print(f"\nmodel conditions: {report.total} total, "
      f"{len(report.relevant)} relevant, {len(report.grayed)} grayed out")
print("\nthe explanation (remove any one and the plan stops being optimal):")
for unit in report.relevant:
    print(f"  {unit}")

print("\nsample of what gets grayed:")
for unit in report.grayed[:6]:
    print(f"  {unit}")
print(f"  ... and {len(report.grayed) - 6} more")

# the complement check: stripping every grayed condition from the model
# leaves the plan valid and still optimal
reduced = xp.apply_edits(xp.empty_model(task), report.relevant)
check = xp.validate_plan(reduced, plan)
best = xp.solve_optimal(reduced)
print(f"\nreduced model: plan valid={check.valid}, "
      f"optimal cost {best.plan.cost} == plan cost {plan.cost}")

doc = vizdoc.build_plan_graph(task, plan, xp.extract_causal_links(task, plan),
                              relevance=report)
vizdoc.validate_document(doc)
dimmed = sum(1 for u in doc["model_panel"] if u["grayed"])
print(f"plan-graph document carries a {len(doc['model_panel'])}-unit model panel, "
      f"{dimmed} dimmed")
