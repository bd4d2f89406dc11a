"""Top-K alternatives: repeatedly forbid the plan just found and re-plan.

Presenting several distinct plans side by side lets decision makers weigh
alternatives the model cannot rank -- implicit preference elicitation.
"""

from importlib import resources

import xaiplan as xp
from xaiplan import vizdoc

data = resources.files("xaiplan") / "data"
domain = xp.parse_domain((data / "triline.pddl").read_text())
problem = xp.parse_problem((data / "triline-to-r.pddl").read_text(), domain)
task = xp.ground(domain, problem)

result = xp.top_k(task, 5)
print(f"top {result.k} plans (exhausted={result.exhausted}):")
for i, plan in enumerate(result.plans):
    steps = " ".join(plan.steps) or "<empty>"
    print(f"  #{i}  cost {plan.cost}:  {steps}")

# how the reformulation works: forbid the optimum once, by hand
forbidden = xp.forbid_plan(task, result.plans[0])
print(f"\nreformulated task after forbidding #{0}: "
      f"{len(forbidden.actions)} actions over {len(forbidden.facts)} facts")
next_best = xp.solve_optimal(forbidden).plan
print("its optimum surfaces back to:", " ".join(xp.surface_plan(task, next_best).steps))

# the renderer-independent bundle a dashboard would consume
graphs = [vizdoc.build_plan_graph(task, p, xp.extract_causal_links(task, p))
          for p in result.plans]
doc = vizdoc.build_topk_doc(result, graphs)
vizdoc.validate_document(doc)
print(f"\ntop-k document: {doc['k']} requested, {len(doc['plans'])} plan graphs, "
      f"costs {[g['plan']['cost'] for g in doc['plans']]}")
