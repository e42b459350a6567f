class PreconditionError(ValueError):
    """An operation's stated hypothesis fails; the message names the inequality."""
