"""Independent reference implementations the test suite checks the package
against. Nothing here imports engine internals: the walker reimplements the
admission flow as a literal step-by-step state machine, and the Erlang
reference evaluates the blocking formula by exact rational summation.
"""

from fractions import Fraction


def erlang_b_direct(erlangs: float, n_channels: int) -> float:
    """Blocking probability by direct summation, exact until the final division.

    P = (A^N / N!) / sum_{i=0..N} A^i / i!, evaluated in Fraction arithmetic.
    """
    a = Fraction(erlangs)
    term = Fraction(1)  # A^i / i! at i = 0
    total = Fraction(1)
    for i in range(1, n_channels + 1):
        term = term * a / i
        total += term
    return float(term / total)


ACCEPTED = "accepted_home"
HANDED = "handed_over"
BLOCKED = "blocked"


def walk_flowchart(home_free, neighbor_free, calls, quantum):
    """Literal walk of the admission flow, one state transition at a time.

    calls: (call_id, demand_ms) pairs in arrival order.
    Returns {call_id: (outcome, serving_bsc, slices)} with serving_bsc the
    1-based neighbor BSC id (home is 0), None when blocked, and slices the
    number of service passes a handed-over call consumed (0 otherwise).
    """
    outcome = {}
    home = home_free
    neighbors = list(neighbor_free)

    # incoming requests: take a home channel while any remains
    waiting = []
    for call_id, demand in calls:
        if home > 0:
            home -= 1
            outcome[call_id] = (ACCEPTED, 0, 0)
        else:
            waiting.append((call_id, demand))
    if not waiting:
        return outcome

    # overloaded: queue the rest and serve quantum by quantum
    queue = list(waiting)
    passes = {call_id: 0 for call_id, _ in waiting}
    rotation = 0
    while queue:
        call_id, remaining = queue.pop(0)
        remaining -= quantum
        passes[call_id] += 1
        if remaining > 0:
            # process not over: rearrange to the end of the queue
            queue.append((call_id, remaining))
            continue
        # process over: ask the neighbors for a channel, rotation order
        chosen = None
        for step in range(len(neighbors)):
            candidate = (rotation + step) % len(neighbors)
            if neighbors[candidate] > 0:
                chosen = candidate
                break
        if chosen is None:
            outcome[call_id] = (BLOCKED, None, 0)
        else:
            neighbors[chosen] -= 1
            rotation = (chosen + 1) % len(neighbors)
            outcome[call_id] = (HANDED, chosen + 1, passes[call_id])
        # any channel left for the calls still waiting?
        if sum(neighbors) == 0:
            for queued_id, _ in queue:
                outcome[queued_id] = (BLOCKED, None, 0)
            queue.clear()
    return outcome


# demand multipliers relative to the quantum; quarter steps stay exact in
# binary floating point, so walker subtraction and engine subtraction agree
DEMAND_MULTIPLIERS = (0.5, 1.0, 1.5, 2.5, 0.25, 3.0, 1.75)


def oracle_instances():
    """Fixed exhaustive generator of small admission instances.

    Covers every topology with 2 or 3 BSCs and 0..4 channels per BSC,
    crossed with call counts 0..12: 1950 instances. Demands cycle through
    quarter-of-quantum multipliers against a quantum of 1.0 ms; arrival
    times are the integers 1..n.
    """
    channel_tuples = []
    for home in range(5):
        for n1 in range(5):
            channel_tuples.append((home, n1))
            for n2 in range(5):
                channel_tuples.append((home, n1, n2))
    quantum = 1.0
    for channels in channel_tuples:
        for n in range(13):
            calls = [
                (i, DEMAND_MULTIPLIERS[i % len(DEMAND_MULTIPLIERS)] * quantum)
                for i in range(n)
            ]
            yield channels, calls, quantum
