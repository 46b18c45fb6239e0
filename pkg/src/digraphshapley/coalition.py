"""Coalition helpers. A coalition is an int bitmask over the player slots:
bit p-1 is set iff player p (1-based) is a member."""

import numbers

from .errors import MembershipError, PlayerRangeError, ValidationError

__all__ = ["coalition", "players_of", "popcount", "full_mask", "coalition_key", "parse_coalition_key"]


def full_mask(n):
    return (1 << n) - 1


def popcount(mask):
    return bin(mask).count("1")


def coalition(players):
    """Returns the coalition mask of an iterable of 1-based player ids. Ids are not range checked here."""
    mask = 0
    for p in players:
        mask |= 1 << (int(p) - 1)
    return mask


def players_of(mask):
    """Returns the members of a coalition mask as an ascending tuple of 1-based player ids."""
    members = []
    p = 1
    while mask:
        if mask & 1:
            members.append(p)
        mask >>= 1
        p += 1
    return tuple(members)


def as_mask(S, n, field="S"):
    """Validates a coalition given either as a mask or as an iterable of player ids, and returns the mask.

    Arguments:
    S -- int mask, or iterable of 1-based player ids
    n -- number of players
    field -- name used in error messages
    """
    if isinstance(S, bool):
        raise ValidationError("expected a coalition, got a boolean", field=field)
    if isinstance(S, numbers.Integral):
        mask = int(S)
        if mask < 0 or mask >> n:
            raise PlayerRangeError("mask %#x has members outside players 1..%d" % (mask, n), field=field)
        return mask
    mask = 0
    for p in S:
        mask |= 1 << (check_player(p, n, field=field) - 1)
    return mask


def check_player(p, n, field="i"):
    """Returns p as an int after checking it is a player id in [1, n]."""
    if isinstance(p, bool) or not isinstance(p, numbers.Integral):
        raise ValidationError("expected an integer player id, got %r" % (p,), field=field)
    p = int(p)
    if not 1 <= p <= n:
        raise PlayerRangeError("player %d outside 1..%d" % (p, n), field=field)
    return p


def require_member(S, p, field="i"):
    if not (S >> (p - 1)) & 1:
        raise MembershipError("player %d is not in coalition %s" % (p, list(players_of(S))), field=field)


def coalition_key(mask):
    """Returns the JSON key of a coalition: comma separated ascending players, '' for the empty coalition."""
    return ",".join(str(p) for p in players_of(mask))


def parse_coalition_key(key, n, field="values"):
    """Parses a JSON coalition key such as '1,3' into a mask. Players must be ascending and within 1..n."""
    key = key.strip()
    if not key:
        return 0
    mask = 0
    last = 0
    for part in key.split(","):
        part = part.strip()
        try:
            p = int(part)
        except ValueError:
            raise ValidationError("coalition key %r has a non-integer player %r" % (key, part), field=field)
        if not 1 <= p <= n:
            raise PlayerRangeError("coalition key %r names player %d outside 1..%d" % (key, p, n), field=field)
        if p <= last:
            raise ValidationError("coalition key %r must list players in ascending order" % key, field=field)
        mask |= 1 << (p - 1)
        last = p
    return mask
