from rest_framework import serializers

COMMANDS = ('density', 'classes', 'siegel', 'verify', 'lvalue', 'lift', 'period', 'suite')


class RunConfigSerializer(serializers.Serializer):
    """One command-line run: the subcommand plus the knobs shared by all of them"""
    command = serializers.ChoiceField(choices=COMMANDS)
    D = serializers.IntegerField(min_value=3, required=False)
    primes = serializers.ListField(child=serializers.IntegerField(min_value=2), default=list)
    m = serializers.ListField(child=serializers.IntegerField(min_value=1, max_value=3), default=list)
    order = serializers.IntegerField(min_value=0, max_value=8, required=False)
    budget = serializers.IntegerField(min_value=1, required=False)
    allow_calibration = serializers.BooleanField(default=True)
    workers = serializers.IntegerField(min_value=1, max_value=64, default=1)
    rankin_cutoff = serializers.IntegerField(min_value=0, default=10 ** 4)
    output = serializers.CharField(required=False, allow_blank=False)

    def validate_D(self, value):
        from quadratic_symbols.fields import is_fundamental

        if not is_fundamental(value):
            raise serializers.ValidationError(f"-{value} is not a fundamental discriminant")
        return value

    def validate_primes(self, value):
        import sympy

        bad = [p for p in value if not sympy.isprime(p)]
        if bad:
            raise serializers.ValidationError(f"not prime: {bad}")
        return sorted(set(value))

    def validate_m(self, value):
        return sorted(set(value))

    def validate(self, data):
        if data['command'] == 'suite':
            if 'D' not in data:
                raise serializers.ValidationError("suite needs D")
            if not data['primes'] or not data['m']:
                raise serializers.ValidationError("suite needs at least one prime and one degree")
        return data
