"""
MEMC System Demo
Example usage of the multiway cut system on the small reference instances
"""
from memc import MulticutSystem, build_qubo, generate_random_instance, to_ising, toy3, toy4
from memc.qubo import energy_table
from memc.solver import argmin_lexicographic


def demo_status():
    """Demo system status"""
    print("=== MEMC System Demo ===\n")

    system = MulticutSystem(cache_enabled=False)
    status = system.get_system_status()
    print("1. System status")
    print(f"   Backends: {', '.join(status['backends'])}")
    print(f"   OR-Tools available: {status['ortools_available']}")
    print(f"   Cache enabled: {status['cache_enabled']}")
    print(f"   Workers: {status['workers']}")


def demo_encoding():
    """Demo QUBO and Ising encoding of TOY-3"""
    print("\n=== Encoding Demo ===\n")

    instance = toy3()
    model = build_qubo(instance)
    print(f"1. TOY-3: {instance.num_vertices} vertices, terminals {instance.terminals}")
    print(f"   QUBO variables: {model.size}, penalty weight: {model.penalty_weight}")
    print(f"   Nonzero terms: {len(model.terms)}, constant: {model.constant}")

    energies = energy_table(model)
    best = argmin_lexicographic(energies, model.size)
    print(f"   Lowest energy {energies[best]} over {len(energies)} bitstrings")

    ising = to_ising(model)
    print("\n2. Ising form")
    print(f"   Couplings: {len(ising.couplings)}, fields: {len(ising.fields)}, offset: {ising.offset}")

    reduced = build_qubo(toy4(), reduced=True)
    print(f"\n3. TOY-4 reduced encoding: {reduced.size} variables")


def demo_backends():
    """Demo every backend on TOY-3"""
    print("\n=== Backend Comparison Demo ===\n")

    instance = toy3()
    system = MulticutSystem(cache_enabled=False)
    settings = {"photonic": {"max_evaluations": "300"}}

    print(f"   {'backend':<10}{'energy':>8}{'cut':>8}  bitstring  evals")
    for backend in ("exact", "maxflow", "greedy", "sa", "qaoa", "photonic"):
        try:
            report = system.solve(instance, backend, seed=0, settings=settings.get(backend))
        except Exception as e:
            print(f"   ✗ {backend} failed: {e}")
            continue
        cut = report.best_cut.cut_cost if report.best_cut else "-"
        print(f"   {backend:<10}{report.best_energy:>8}{cut:>8}  {report.bitstring:<9}  "
              f"{report.samples_evaluated}")

    optimum = system.oracle(instance)
    print(f"\n   Exact optimum: {optimum['opt']} ({optimum['method']})")


def demo_random_instance():
    """Demo classical baselines on a random instance"""
    print("\n=== Random Instance Demo ===\n")

    instance = generate_random_instance(9, 14, 3, cost_range=(1, 10), seed=42, integer_costs=True)
    print(f"1. Random instance: |V|={instance.num_vertices}, |E|={len(instance.edges)}, "
          f"k={instance.k}")

    system = MulticutSystem(cache_enabled=False)
    for backend in ("exact", "greedy", "sa"):
        report = system.solve(instance, backend, seed=1)
        if report.best_cut is None:
            print(f"   ✗ {backend}: infeasible best sample")
            continue
        edges = ", ".join(f"{u}-{v}" for u, v in report.best_cut.cut_edges)
        print(f"   {backend}: cost {report.best_cut.cut_cost} [{edges}]")


def main():
    """Run all demos"""
    try:
        demo_status()
        demo_encoding()
        demo_backends()
        demo_random_instance()

        print("\n=== Demo completed successfully! ===")

    except Exception as e:
        print(f"\nDemo failed with error: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
