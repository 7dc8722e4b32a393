from rest_framework import serializers
import sympy

from .fields import is_fundamental


class LocalContextSerializer(serializers.Serializer):
    """Descriptor of a local context, as shown in reports"""
    D = serializers.IntegerField(min_value=3)
    p = serializers.IntegerField(min_value=2)
    splitting = serializers.CharField(read_only=True)
    xi = serializers.IntegerField(read_only=True)
    f = serializers.IntegerField(read_only=True)
    e = serializers.IntegerField(read_only=True)
    i_p = serializers.IntegerField(read_only=True)

    def validate_D(self, value):
        if not is_fundamental(value):
            raise serializers.ValidationError(f"-{value} is not a fundamental discriminant")
        return value

    def validate_p(self, value):
        if not sympy.isprime(value):
            raise serializers.ValidationError(f"{value} is not prime")
        return value
